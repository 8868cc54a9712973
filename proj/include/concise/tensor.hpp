#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "concise/matrix.hpp"

namespace concise {

// Dense tensor in S^{nu_1}V_1 x ... x S^{nu_d}V_d, stored in the full
// multilinear embedding: the underlying array has one slot per symmetric
// power factor, so coordinate group i occupies nu_i consecutive slots of
// size dims[i] each. The default format (all nu_i = 1) is the plain Segre
// case with one slot per coordinate.
template <class R>
struct Tensor {
    std::vector<int> dims;    // d group dimensions
    std::vector<int> format;  // d symmetric powers nu_i >= 1
    std::vector<R> data;      // row-major over the expanded slot list

    Tensor() = default;
    Tensor(std::vector<int> dims_, std::vector<int> format_ = {})
        : dims(std::move(dims_)), format(std::move(format_)) {
        if (format.empty()) format.assign(dims.size(), 1);
        if (format.size() != dims.size()) throw ShapeMismatch("format length");
        data.assign(entry_count(), R{});
    }

    int order() const { return static_cast<int>(dims.size()); }
    int slot_count() const { return std::accumulate(format.begin(), format.end(), 0); }

    size_t entry_count() const {
        size_t n = 1;
        for (int i = 0; i < order(); ++i)
            for (int k = 0; k < format[i]; ++k) n *= static_cast<size_t>(dims[i]);
        return n;
    }

    std::vector<int> slot_dims() const {
        std::vector<int> s;
        for (int i = 0; i < order(); ++i)
            for (int k = 0; k < format[i]; ++k) s.push_back(dims[i]);
        return s;
    }

    // first expanded slot of coordinate group i
    int group_slot(int i) const {
        int s = 0;
        for (int j = 0; j < i; ++j) s += format[j];
        return s;
    }

    size_t offset(const std::vector<int>& idx) const {
        auto sd = slot_dims();
        if (idx.size() != sd.size()) throw ShapeMismatch("index arity");
        size_t off = 0;
        for (size_t k = 0; k < sd.size(); ++k) {
            if (idx[k] < 0 || idx[k] >= sd[k]) throw ShapeMismatch("index out of range");
            off = off * sd[k] + idx[k];
        }
        return off;
    }

    R& at(const std::vector<int>& idx) { return data[offset(idx)]; }
    const R& at(const std::vector<int>& idx) const { return data[offset(idx)]; }

    bool is_zero_tensor() const {
        for (const auto& x : data)
            if (!is_zero(x)) return false;
        return true;
    }

    friend bool operator==(const Tensor& a, const Tensor& b) {
        return a.dims == b.dims && a.format == b.format && a.data == b.data;
    }

    // Validate the symmetry demanded by the format on every group with nu > 1.
    bool format_symmetry_holds() const {
        auto sd = slot_dims();
        size_t n = data.size();
        for (int i = 0; i < order(); ++i) {
            if (format[i] <= 1) continue;
            int s0 = group_slot(i);
            std::vector<int> idx(sd.size());
            for (size_t off = 0; off < n; ++off) {
                size_t rem = off;
                for (int k = static_cast<int>(sd.size()) - 1; k >= 0; --k) {
                    idx[k] = static_cast<int>(rem % sd[k]);
                    rem /= sd[k];
                }
                // compare against the transposition of each adjacent slot pair
                for (int k = 0; k + 1 < format[i]; ++k) {
                    std::vector<int> jdx = idx;
                    std::swap(jdx[s0 + k], jdx[s0 + k + 1]);
                    if (!(at(idx) == at(jdx))) return false;
                }
            }
        }
        return true;
    }
};

namespace detail {

// iterate expanded indices; f(idx)
template <class R, class F>
void for_each_index(const Tensor<R>& t, F&& f) {
    auto sd = t.slot_dims();
    std::vector<int> idx(sd.size(), 0);
    if (sd.empty()) return;
    for (;;) {
        f(idx);
        int k = static_cast<int>(sd.size()) - 1;
        while (k >= 0 && ++idx[k] == sd[k]) idx[k--] = 0;
        if (k < 0) break;
    }
}

} // namespace detail

// Flattening with respect to a set of expanded SLOTS: matrix of the map from
// the dual of the complementary slots to the chosen slots, lexicographic
// bases on both sides.
template <class R>
Matrix<R> flatten_slots(const Tensor<R>& t, const std::vector<int>& slots) {
    auto sd = t.slot_dims();
    std::vector<bool> sel(sd.size(), false);
    for (int s : slots) sel[s] = true;
    long long rows = 1, cols = 1;
    for (size_t k = 0; k < sd.size(); ++k) (sel[k] ? rows : cols) *= sd[k];
    Matrix<R> m(static_cast<int>(rows), static_cast<int>(cols));
    detail::for_each_index(t, [&](const std::vector<int>& idx) {
        long long r = 0, c = 0;
        for (size_t k = 0; k < sd.size(); ++k) {
            if (sel[k]) r = r * sd[k] + idx[k];
            else c = c * sd[k] + idx[k];
        }
        m(static_cast<int>(r), static_cast<int>(c)) = t.at(idx);
    });
    return m;
}

// Flattening by coordinate GROUPS (whole S^{nu_i}V_i factors).
template <class R>
Matrix<R> flatten(const Tensor<R>& t, const std::vector<int>& groups) {
    std::vector<int> slots;
    for (int g : groups)
        for (int k = 0; k < t.format[g]; ++k) slots.push_back(t.group_slot(g) + k);
    return flatten_slots(t, slots);
}

// Single-slot flattening of a group: the m_i x (rest) matrix whose rank is
// the number of essential variables of the group. For nu_i = 1 this is the
// ordinary coordinate flattening.
template <class R>
Matrix<R> flatten_single_slot(const Tensor<R>& t, int group) {
    return flatten_slots(t, {t.group_slot(group)});
}

template <class R>
bool is_concise(const Tensor<R>& t, int group) {
    return rank(flatten_single_slot(t, group)) == t.dims[group];
}

template <class R>
std::vector<bool> conciseness_pattern(const Tensor<R>& t) {
    std::vector<bool> out;
    for (int i = 0; i < t.order(); ++i) out.push_back(is_concise(t, i));
    return out;
}

namespace detail {

// Apply a linear map to one slot of a raw dense array.
template <class R>
void apply_slot_raw(std::vector<R>& data, std::vector<int>& sd, int slot, const Matrix<R>& m) {
    if (m.cols != sd[slot]) throw ShapeMismatch("slot map mismatch");
    std::vector<int> osd = sd;
    osd[slot] = m.rows;
    size_t n = 1;
    for (int dsz : osd) n *= static_cast<size_t>(dsz);
    std::vector<R> out(n, R{});
    std::vector<int> idx(sd.size(), 0);
    size_t total = 1;
    for (int dsz : sd) total *= static_cast<size_t>(dsz);
    for (size_t off = 0; off < total; ++off) {
        const R& v = data[off];
        if (!is_zero(v)) {
            for (int r = 0; r < m.rows; ++r) {
                if (is_zero(m(r, idx[slot]))) continue;
                size_t o2 = 0;
                for (size_t k = 0; k < osd.size(); ++k)
                    o2 = o2 * osd[k] + (static_cast<int>(k) == slot ? r : idx[k]);
                out[o2] += m(r, idx[slot]) * v;
            }
        }
        int k = static_cast<int>(sd.size()) - 1;
        while (k >= 0 && ++idx[k] == sd[k]) idx[k--] = 0;
    }
    data = std::move(out);
    sd = std::move(osd);
}

} // namespace detail

// Apply one linear map per coordinate group; a map with r rows and
// dims[i] columns acts on every slot of group i.
template <class R>
Tensor<R> restrict_tensor(const Tensor<R>& t, const std::vector<Matrix<R>>& maps) {
    if (static_cast<int>(maps.size()) != t.order()) throw ShapeMismatch("one map per coordinate");
    for (int i = 0; i < t.order(); ++i)
        if (maps[i].cols != t.dims[i]) throw ShapeMismatch("map domain mismatch");
    std::vector<R> data = t.data;
    std::vector<int> sd = t.slot_dims();
    int slot = 0;
    for (int i = 0; i < t.order(); ++i)
        for (int k = 0; k < t.format[i]; ++k, ++slot)
            detail::apply_slot_raw(data, sd, slot, maps[i]);
    Tensor<R> out;
    out.format = t.format;
    out.dims.resize(t.order());
    for (int i = 0; i < t.order(); ++i) out.dims[i] = maps[i].rows;
    out.data = std::move(data);
    return out;
}

// Apply a map to one coordinate group only (same map on each of its slots).
template <class R>
Tensor<R> apply_to_group(const Tensor<R>& t, int group, const Matrix<R>& m) {
    std::vector<R> data = t.data;
    std::vector<int> sd = t.slot_dims();
    int s0 = t.group_slot(group);
    for (int k = 0; k < t.format[group]; ++k)
        detail::apply_slot_raw(data, sd, s0 + k, m);
    Tensor<R> out;
    out.format = t.format;
    out.dims = t.dims;
    out.dims[group] = m.rows;
    out.data = std::move(data);
    return out;
}

// Unit tensor <r>: sum of e_i^{(x) d}.
template <class R>
Tensor<R> unit_tensor(int r, int d, const R& one) {
    Tensor<R> t(std::vector<int>(d, r));
    std::vector<int> idx(d);
    for (int i = 0; i < r; ++i) {
        std::fill(idx.begin(), idx.end(), i);
        t.at(idx) = one;
    }
    return t;
}

// Entrywise map between entry types (limits, embeddings).
template <class S, class R, class F>
Tensor<S> map_entries(const Tensor<R>& t, F&& f) {
    Tensor<S> out;
    out.dims = t.dims;
    out.format = t.format;
    out.data.reserve(t.data.size());
    for (const auto& x : t.data) out.data.push_back(f(x));
    return out;
}

// Column span of the stacked single-slot flattenings: smallest coordinate-i
// subspace containing every member of the family.
template <class R>
std::vector<std::vector<R>> joint_conciseness_space(const std::vector<Tensor<R>>& family, int group,
                                                    const R& one) {
    if (family.empty()) return {};
    int m = family.front().dims[group];
    std::vector<std::vector<R>> cols;
    for (const auto& t : family) {
        if (t.dims != family.front().dims) throw ShapeMismatch("family dims differ");
        Matrix<R> f = flatten_single_slot(t, group);
        for (int c = 0; c < f.cols; ++c) {
            std::vector<R> v(m);
            for (int r = 0; r < m; ++r) v[r] = f(r, c);
            bool nz = false;
            for (auto& x : v) nz = nz || !is_zero(x);
            if (nz) cols.push_back(std::move(v));
        }
    }
    // reduce to a basis
    Matrix<R> m2(static_cast<int>(cols.size()), m);
    for (size_t r = 0; r < cols.size(); ++r)
        for (int c = 0; c < m; ++c) m2(static_cast<int>(r), c) = cols[r][c];
    std::vector<int> piv;
    Matrix<R> red = m2;
    int rk = gauss_reduce(red, &piv);
    std::vector<std::vector<R>> basis;
    for (int r = 0; r < rk; ++r) {
        std::vector<R> v(m, zero_like(one));
        for (int c = 0; c < m; ++c) v[c] = red(r, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace concise
