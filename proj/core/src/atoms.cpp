#include "cml/atoms.hpp"

#include <map>
#include <set>

#include "cml/errors.hpp"

namespace cml {

namespace {

void require_tuple(const std::vector<int>& xs, const Signature& sig, const char* which) {
    if (xs.empty()) throw InputError(std::string(which) + " tuple is empty");
    std::set<int> seen;
    for (int v : xs) {
        if (v < 0 || v >= static_cast<int>(sig.var_count()))
            throw InputError(std::string(which) + " tuple references an unknown variable");
        if (!seen.insert(v).second)
            throw InputError(std::string(which) + " tuple repeats a variable");
    }
}

// all value-index tuples over the ranges of vars, lexicographic
std::vector<std::vector<int>> range_tuples(const std::vector<int>& vars, const Signature& sig) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(vars.size(), 0);
    for (;;) {
        out.push_back(cur);
        size_t i = vars.size();
        while (i > 0 && cur[i - 1] == sig.range_size(vars[i - 1]) - 1) cur[--i] = 0;
        if (i == 0) break;
        ++cur[i - 1];
    }
    return out;
}

FPtr tuple_literal(const std::vector<int>& vars, const std::vector<int>& vals) {
    std::vector<FPtr> lits;
    for (size_t i = 0; i < vars.size(); ++i) lits.push_back(f_lit(vars[i], vals[i], false));
    return f_and_all(lits);
}

// Pr side of the marginal identity atom: the tuple of values may fall outside
// a variable's range, in which case the probability is the constant 0.
FPtr mi_side(const std::vector<int>& vars, const std::vector<Value>& vals, const Signature& sig) {
    std::vector<FPtr> lits;
    for (size_t i = 0; i < vars.size(); ++i) {
        int idx = sig.value_index(vars[i], vals[i]);
        if (idx < 0) return co_bot(sig);
        lits.push_back(f_lit(vars[i], idx, false));
    }
    return f_and_all(lits);
}

} // namespace

FPtr expand_atom(AtomKind kind, const std::vector<int>& xs, const std::vector<int>& ys,
                 const std::vector<int>& zs, const Signature& sig) {
    require_tuple(xs, sig, "first");
    require_tuple(ys, sig, "second");
    if (kind == AtomKind::Cindep)
        require_tuple(zs, sig, "conditioning");
    else if (!zs.empty())
        throw InputError("conditioning tuple only applies to conditional independence");

    switch (kind) {
        case AtomKind::Dep: {
            std::vector<FPtr> conj;
            for (const auto& x : range_tuples(xs, sig)) {
                std::vector<FPtr> disj;
                for (const auto& y : range_tuples(ys, sig))
                    disj.push_back(f_imp(tuple_literal(xs, x), tuple_literal(ys, y)));
                conj.push_back(f_gor_all(disj));
            }
            return f_and_all(conj);
        }
        case AtomKind::Mi: {
            if (xs.size() != ys.size())
                throw InputError("marginal identity needs tuples of equal length");
            // Ran(X) u Ran(Y), in order of first appearance
            std::vector<std::vector<Value>> tuples;
            auto push_values = [&](const std::vector<int>& vars) {
                for (const auto& t : range_tuples(vars, sig)) {
                    std::vector<Value> vals;
                    for (size_t i = 0; i < vars.size(); ++i)
                        vals.push_back(sig.range(vars[i])[t[i]]);
                    bool dup = false;
                    for (const auto& prev : tuples)
                        if (prev == vals) dup = true;
                    if (!dup) tuples.push_back(std::move(vals));
                }
            };
            push_values(xs);
            push_values(ys);
            std::vector<FPtr> conj;
            for (const auto& vals : tuples)
                conj.push_back(
                    f_prcmp(mi_side(xs, vals, sig), Cmp::Eq, mi_side(ys, vals, sig)));
            return f_and_all(conj);
        }
        case AtomKind::Indep: {
            std::vector<FPtr> conj;
            for (const auto& x : range_tuples(xs, sig))
                for (const auto& y : range_tuples(ys, sig))
                    conj.push_back(f_condcmp(tuple_literal(xs, x), nullptr, Cmp::Eq,
                                             tuple_literal(xs, x), tuple_literal(ys, y)));
            return f_and_all(conj);
        }
        case AtomKind::Cindep: {
            std::vector<FPtr> conj;
            for (const auto& x : range_tuples(xs, sig))
                for (const auto& y : range_tuples(ys, sig))
                    for (const auto& z : range_tuples(zs, sig))
                        conj.push_back(f_condcmp(
                            tuple_literal(xs, x), tuple_literal(zs, z), Cmp::Eq,
                            tuple_literal(xs, x),
                            f_and(tuple_literal(ys, y), tuple_literal(zs, z))));
            return f_and_all(conj);
        }
    }
    throw InputError("bad atom kind");
}

namespace {

std::vector<int> project(const Assignment& a, const std::vector<int>& vars) {
    std::vector<int> out;
    for (int v : vars) out.push_back(a.vals[v]);
    return out;
}

} // namespace

bool direct_check(AtomKind kind, const std::vector<int>& xs, const std::vector<int>& ys,
                  const std::vector<int>& zs, const CausalMultiteam& m) {
    if (m.empty()) return true;
    const Signature& sig = *m.sig;

    switch (kind) {
        case AtomKind::Dep: {
            std::map<std::vector<int>, std::vector<int>> seen;
            for (const auto& [s, c] : m.team.counts) {
                Assignment a = assignment_at(sig, s);
                auto key = project(a, xs);
                auto val = project(a, ys);
                auto it = seen.find(key);
                if (it == seen.end())
                    seen.emplace(key, val);
                else if (it->second != val)
                    return false;
            }
            return true;
        }
        case AtomKind::Mi: {
            std::map<std::vector<Value>, long long> cx, cy;
            for (const auto& [s, c] : m.team.counts) {
                Assignment a = assignment_at(sig, s);
                std::vector<Value> vx, vy;
                for (int v : xs) vx.push_back(sig.range(v)[a.vals[v]]);
                for (int v : ys) vy.push_back(sig.range(v)[a.vals[v]]);
                cx[vx] += c;
                cy[vy] += c;
            }
            return cx == cy; // same multiteam size, so counts compare directly
        }
        case AtomKind::Indep:
        case AtomKind::Cindep: {
            std::vector<std::vector<int>> slices; // z value tuples with positive mass
            if (kind == AtomKind::Indep)
                slices.push_back({});
            else
                for (const auto& [s, c] : m.team.counts) {
                    auto z = project(assignment_at(sig, s), zs);
                    bool dup = false;
                    for (const auto& prev : slices)
                        if (prev == z) dup = true;
                    if (!dup) slices.push_back(z);
                }
            for (const auto& z : slices) {
                std::map<std::vector<int>, long long> cx, cy;
                std::map<std::pair<std::vector<int>, std::vector<int>>, long long> cxy;
                long long total = 0;
                for (const auto& [s, c] : m.team.counts) {
                    Assignment a = assignment_at(sig, s);
                    if (kind == AtomKind::Cindep && project(a, zs) != z) continue;
                    auto px = project(a, xs);
                    auto py = project(a, ys);
                    cx[px] += c;
                    cy[py] += c;
                    cxy[{px, py}] += c;
                    total += c;
                }
                for (const auto& [x, nx] : cx)
                    for (const auto& [y, ny] : cy) {
                        long long nxy = 0;
                        auto it = cxy.find({x, y});
                        if (it != cxy.end()) nxy = it->second;
                        if (Rational(nxy, total) != Rational(nx, total) * Rational(ny, total))
                            return false;
                    }
            }
            return true;
        }
    }
    throw InputError("bad atom kind");
}

} // namespace cml
