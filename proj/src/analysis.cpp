#include "concise/analysis.hpp"

namespace concise {

template struct Centroid<Rational>;
template Centroid<Rational> centroid<Rational>(const Tensor<Rational>&);
template Centroid<Zp> centroid<Zp>(const Tensor<Zp>&);

} // namespace concise
