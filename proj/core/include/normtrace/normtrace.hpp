#pragma once

#include "normtrace/algebra.hpp"
#include "normtrace/chars.hpp"
#include "normtrace/counts.hpp"
#include "normtrace/error.hpp"
#include "normtrace/exact.hpp"
#include "normtrace/gf.hpp"
#include "normtrace/matrix.hpp"
#include "normtrace/parallel.hpp"
#include "normtrace/poly.hpp"
#include "normtrace/sum_value.hpp"
#include "normtrace/sums.hpp"
#include "normtrace/verify.hpp"
