#pragma once

#include <string>

#include "concise/series.hpp"
#include "concise/tensor.hpp"

namespace concise {

// Human-readable pencil rendering of an order-3 tensor: a matrix of linear
// forms in x_1..x_m, the x-symbols running over the first coordinate.
std::string pencil_string(const Tensor<Rational>& t);
std::string pencil_string(const Tensor<RatFunc<Rational>>& t);

std::string to_string(const RatFunc<Rational>& x);

} // namespace concise
