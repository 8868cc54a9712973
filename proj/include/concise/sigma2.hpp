#pragma once

#include <cstdint>
#include <optional>

#include "concise/tensor.hpp"

namespace concise {

struct DegenerateOnePS : std::runtime_error {
    explicit DegenerateOnePS(const std::string& what) : std::runtime_error(what) {}
};

// Integer polynomial in the Lefschetz symbol L.
struct MotivePoly {
    std::vector<long long> c; // c[k] = coefficient of L^k

    MotivePoly() = default;
    explicit MotivePoly(std::vector<long long> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    long long coeff(int k) const { return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : 0; }

    long long eval(long long x) const {
        long long v = 0;
        for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
        return v;
    }

    friend MotivePoly operator+(const MotivePoly& a, const MotivePoly& b);
    friend MotivePoly operator-(const MotivePoly& a, const MotivePoly& b);
    friend MotivePoly operator*(const MotivePoly& a, const MotivePoly& b);
    friend bool operator==(const MotivePoly& a, const MotivePoly& b) { return a.c == b.c; }
    static MotivePoly one_plus_L();
    static MotivePoly one_plus_L2();
    static MotivePoly power(const MotivePoly& a, int k);
    static MotivePoly geometric(int terms); // 1 + L + ... + L^{terms-1}
};

// Closed formulas for the motives of the concise secant and the secant of the
// Segre of d copies of P^1; the half factor is checked to cancel.
MotivePoly csigma2_motive_formula(int d);
MotivePoly sigma2_motive_formula(int d);
MotivePoly segre_fibre_motive(int d);

// Torus-fixed points of the concise second secant. Over each of the 2^d basis
// simple tensors there are height-one points (a subset I of the remaining
// coordinates with |I| >= 2) and height-two points (a distinguished remaining
// coordinate j and a type in {1,2,3}).
struct FixedPoint {
    uint32_t base = 0;        // bit i set: coordinate i uses y instead of x
    int height = 1;           // 1 or 2
    std::vector<int> I;       // height 1: the concise companion set (0-based, subset of {1..d-1})
    int j = 0;                // height 2: distinguished coordinate (0-based)
    int type = 0;             // height 2: 1, 2 or 3
};

std::vector<FixedPoint> enumerate_fixed_points(int d);
long long fixed_point_count_formula(int d);

// Tangent weights at a fixed point: 2d+1 vectors in Z^d with even entries.
using WeightVector = std::vector<int>;
std::vector<WeightVector> tangent_weights(const FixedPoint& fp, int d);

// One-parameter subgroup 0 < e_1 << ... << e_d that pairs nonzero with every
// tangent weight; the default is e_i = 9^(i-1).
std::vector<long long> default_one_ps(int d);

// Bialynicki-Birula motive: sum of L^(number of positive weights) over the
// fixed points.
MotivePoly bb_motive(int d, const std::vector<long long>& one_ps = {});

// Normal forms of border rank <= 2 tensors in a product of d copies of k^2.
struct NormalForm2 {
    enum class Kind { B, C } kind = Kind::B;
    std::vector<int> I; // coordinates on which the tensor is concise (0-based)
    Rational discriminant{0};
    bool split_over_base = true; // the two points are defined over the base field
};

std::optional<NormalForm2> classify_rank2(const Tensor<Rational>& t);

} // namespace concise
