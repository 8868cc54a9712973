#include "concise/unres_segre.hpp"

namespace concise {

template struct Degeneration<Rational>;
template struct UnresCertificate<Rational>;
template UnresCertificate<Rational> unres_full<Rational>(const Degeneration<Rational>&,
                                                         std::vector<int>, const UnresStepOptions&);
template std::optional<std::vector<Matrix<Rational>>> check_gl_equivalence<Rational>(
    const UnresCertificate<Rational>&, const UnresCertificate<Rational>&, std::string*);

template struct Degeneration<Zp>;
template UnresCertificate<Zp> unres_full<Zp>(const Degeneration<Zp>&, std::vector<int>,
                                             const UnresStepOptions&);

} // namespace concise
