#pragma once

#include "dynheight/interval.hpp"
#include "dynheight/quadext.hpp"
#include "dynheight/rational.hpp"

#include <vector>

namespace dynheight {

/// Exact integer M with h(q_1, ..., q_k) = log M: clear denominators by the
/// lcm L and take max(L, |numerators|).
mpz_class tuple_height_integer(const std::vector<mpq_class>& qs);

/// Naive Weil height of a single rational: log max(|num|, den).
DyadicInterval rational_height(const mpq_class& q, mpfr_prec_t precision = 128);

/// h(q_1, ..., q_k) = sum_v log max{1, |q_i|_v}, as an enclosure of log M.
DyadicInterval tuple_height(const std::vector<mpq_class>& qs, mpfr_prec_t precision = 128);

/// Height of a quadratic element: average of the tuple heights of the
/// conjugates, computed place by place from valuations and embeddings.
DyadicInterval quad_height(const QuadExt& z, mpfr_prec_t precision = 128);

} // namespace dynheight
