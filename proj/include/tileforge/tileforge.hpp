#pragma once

#include "tileforge/barrier_set.hpp"
#include "tileforge/big_count.hpp"
#include "tileforge/deformation.hpp"
#include "tileforge/error.hpp"
#include "tileforge/geometry.hpp"
#include "tileforge/matching.hpp"
#include "tileforge/region_spec.hpp"
#include "tileforge/render.hpp"
#include "tileforge/schroeder.hpp"
#include "tileforge/theorem.hpp"
