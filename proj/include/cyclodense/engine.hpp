#pragma once

#include "arith.hpp"
#include "counting.hpp"
#include "exponents.hpp"
#include "membership.hpp"
#include "series.hpp"
#include "witness.hpp"
