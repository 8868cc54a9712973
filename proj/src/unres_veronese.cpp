#include "concise/unres_veronese.hpp"

namespace concise {

template struct PolyFamily<Rational>;
template PolyStepResult<Rational> unrestrict_poly_step<Rational>(const PolyFamily<Rational>&, int);
template FamilyUnrestriction<Rational> unrestrict_family<Rational>(PolyFamily<Rational>);
template SymmetricUnrestriction<Rational> unrestrict_symmetric<Rational>(
    const MPoly<RatFunc<Rational>>&, int, int);
template UnresCertificate<Rational> unrestrict_partial<Rational>(const Degeneration<Rational>&,
                                                                 std::vector<int>);

} // namespace concise
