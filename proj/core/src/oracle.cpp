#include "cml/oracle.hpp"

#include "cml/errors.hpp"

namespace cml {

namespace {

void require_law_aware(const FPtr& f, const FPtr& g, LawMode mode) {
    if (mode != LawMode::NoLaws) return;
    if (has_boxright(f) || (g && has_boxright(g)))
        throw InputError(
            "oracle: counterfactuals are law-sensitive; use all-laws or fixed-laws mode");
}

} // namespace

std::optional<Counterexample> equiv(const FPtr& f, const FPtr& g, const Signature& sig,
                                    long long max_size, LawMode mode,
                                    const std::optional<FunctionComponent>& laws,
                                    const EnumGuard& guard, const EvalConfig& cfg) {
    require_law_aware(f, g, mode);
    std::optional<Counterexample> found;
    enumerate_models(sig, max_size, mode, laws, guard, [&](const CausalMultiteam& m) {
        bool va = eval(m, f, cfg);
        bool vb = eval(m, g, cfg);
        if (va != vb) {
            // self-check: the reported model must validate and reproduce the verdicts
            if (!validate(m).empty()) throw std::logic_error("oracle produced an invalid model");
            if (eval(m, f, cfg) != va || eval(m, g, cfg) != vb)
                throw std::logic_error("oracle counterexample does not reproduce");
            found = Counterexample{m, va, vb};
            return false;
        }
        return true;
    });
    return found;
}

std::optional<Counterexample> check_set_agreement(const FPtr& f, const ProbabilitySet& set,
                                                  const Signature& sig, long long max_size,
                                                  LawMode mode,
                                                  const std::optional<FunctionComponent>& laws,
                                                  const EnumGuard& guard, const EvalConfig& cfg) {
    require_law_aware(f, nullptr, mode);
    if (set.n != sig.state_count())
        throw InputError("check_set_agreement: set dimension does not match the signature");
    std::optional<Counterexample> found;
    enumerate_models(sig, max_size, mode, laws, guard, [&](const CausalMultiteam& m) {
        bool ev = eval(m, f, cfg);
        bool mem = m.empty() ? true : member(probability_vector(m), set);
        if (ev != mem) {
            if (!validate(m).empty()) throw std::logic_error("oracle produced an invalid model");
            found = Counterexample{m, ev, mem};
            return false;
        }
        return true;
    });
    return found;
}

} // namespace cml
