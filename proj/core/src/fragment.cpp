#include "cml/fragment.hpp"

namespace cml {

const char* fragment_str(FragmentLabel f) {
    switch (f) {
        case FragmentLabel::PMinus: return "P-";
        case FragmentLabel::P: return "P";
        case FragmentLabel::PSup: return "P(=>)";
        case FragmentLabel::PBox: return "P(box)";
        case FragmentLabel::PCO: return "PCO";
        case FragmentLabel::Extended: return "EXTENDED";
    }
    return "?";
}

bool fragment_le(FragmentLabel a, FragmentLabel b) {
    if (a == b) return true;
    auto rank = [](FragmentLabel f) {
        switch (f) {
            case FragmentLabel::PMinus: return 0;
            case FragmentLabel::P: return 1;
            case FragmentLabel::PSup:
            case FragmentLabel::PBox: return 2;
            case FragmentLabel::PCO: return 3;
            case FragmentLabel::Extended: return 4;
        }
        return 4;
    };
    if ((a == FragmentLabel::PSup && b == FragmentLabel::PBox) ||
        (a == FragmentLabel::PBox && b == FragmentLabel::PSup))
        return false;
    return rank(a) < rank(b);
}

FragmentLabel classify_fragment(const FPtr& f) {
    if (has_extended(f)) return FragmentLabel::Extended;
    bool sup = has_supset(f);
    bool box = has_boxright(f);
    if (sup && box) return FragmentLabel::PCO;
    if (sup) return FragmentLabel::PSup;
    if (box) return FragmentLabel::PBox;
    if (has_comparison(f)) return FragmentLabel::P;
    return FragmentLabel::PMinus;
}

} // namespace cml
