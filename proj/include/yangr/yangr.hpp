#pragma once

#include "yangr/error.hpp"
#include "yangr/rational.hpp"
#include "yangr/hbar_poly.hpp"
#include "yangr/matrix.hpp"
#include "yangr/series.hpp"
#include "yangr/affine.hpp"
#include "yangr/root_system.hpp"
#include "yangr/freealg.hpp"
#include "yangr/contra2.hpp"
#include "yangr/rep.hpp"
#include "yangr/presets.hpp"
#include "yangr/rminus.hpp"
#include "yangr/auditor.hpp"
