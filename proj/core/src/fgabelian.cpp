#include "cocyclelab/fgabelian.hpp"

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

bool FgPresentation::is_trivial_element(const std::vector<BigInt>& v) const {
    if (v.size() != moduli.size()) throw InternalError("presentation: coordinate mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (moduli[i].is_zero()) {
            if (!v[i].is_zero()) return false;
        } else if (v[i] % moduli[i] != 0) {
            return false;
        }
    }
    return true;
}

std::vector<BigInt> FgPresentation::reduce(std::vector<BigInt> v) const {
    if (v.size() != moduli.size()) throw InternalError("presentation: coordinate mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (moduli[i].is_zero()) continue;
        v[i] %= moduli[i];
        if (v[i] < 0) v[i] += moduli[i];
    }
    return v;
}

namespace {

// [m | relation columns of pres]
IntMat with_relations(const IntMat& m, const FgPresentation& pres, std::size_t& extra) {
    extra = 0;
    for (const BigInt& b : pres.moduli)
        if (!b.is_zero()) ++extra;
    IntMat out(m.rows(), m.cols() + extra);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j);
    std::size_t c = m.cols();
    for (std::size_t i = 0; i < pres.moduli.size(); ++i)
        if (!pres.moduli[i].is_zero()) out.at(i, c++) = pres.moduli[i];
    return out;
}

} // namespace

std::optional<std::vector<BigInt>> solve_in_subgroup(const IntMat& gens,
                                                     const FgPresentation& pres,
                                                     const std::vector<BigInt>& v) {
    if (gens.rows() != pres.coords() || v.size() != pres.coords())
        throw InternalError("solve_in_subgroup: coordinate mismatch");
    std::size_t extra = 0;
    IntMat m = with_relations(gens, pres, extra);
    SnfResult f = smith_normal_form(m);
    auto sol = snf_solve(f, m.rows(), m.cols(), v);
    if (!sol) return std::nullopt;
    sol->resize(gens.cols());
    return sol;
}

std::vector<std::vector<BigInt>> kernel_generators(const IntMat& map,
                                                   const FgPresentation& source,
                                                   const FgPresentation& target) {
    if (map.rows() != target.coords() || map.cols() != source.coords())
        throw InternalError("kernel_generators: coordinate mismatch");
    std::size_t extra = 0;
    IntMat m = with_relations(map, target, extra);
    SnfOptions opts;
    opts.want_u = false;
    SnfResult f = smith_normal_form(m, opts);
    std::vector<std::vector<BigInt>> out;
    // Lattice kernel of [map | relations]: V-columns past the rank.  Their
    // leading blocks, reduced modulo the source presentation, generate the
    // kernel subgroup.
    for (std::size_t j = f.rank; j < m.cols(); ++j) {
        std::vector<BigInt> x(source.coords());
        for (std::size_t i = 0; i < source.coords(); ++i) x[i] = f.v.at(i, j);
        x = source.reduce(std::move(x));
        bool zero = true;
        for (const BigInt& b : x)
            if (!b.is_zero()) {
                zero = false;
                break;
            }
        if (!zero) out.push_back(std::move(x));
    }
    return out;
}

std::vector<BigInt> quotient_invariants(const IntMat& gens, std::size_t ambient) {
    if (gens.rows() != ambient) throw InternalError("quotient_invariants: row count mismatch");
    SnfOptions opts;
    opts.want_u = false;
    opts.want_v = false;
    SnfResult f = smith_normal_form(gens, opts);
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < f.rank; ++i)
        if (f.diag[i] > 1) out.push_back(f.diag[i]);
    for (std::size_t i = f.rank; i < ambient; ++i) out.push_back(0);
    return out;
}

std::string invariants_to_string(const std::vector<BigInt>& factors) {
    if (factors.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += " x ";
        if (factors[i].is_zero())
            s += "Z";
        else
            s += "Z/" + factors[i].str();
    }
    return s;
}

} // namespace cocyclelab
