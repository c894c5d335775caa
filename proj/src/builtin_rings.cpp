#include "fusioncat/fusion_ring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace fusioncat {

// ---- word reduction ----------------------------------------------------
//
// Elements are integer combinations of words over single-character symbols.
// Rules rewrite a factor anywhere inside a word into a combination of words
// (group relations, commutations past the invertible generator, core table
// products, and the one genuinely three-letter rule of each AH presentation).
// Core-product and middle rules strictly reduce the number of core letters,
// commutations move the invertible letter left or absorb it, so reduction
// terminates; confluence is checked by re-running with shuffled rule order
// and certified by ring validation (associativity) afterwards.

namespace {

using Word = std::string;
using LinComb = std::map<Word, long long>;

struct Rewriter {
    std::vector<RingPresentation::Rule> rules;
    uint64_t rngState;

    explicit Rewriter(const RingPresentation& P, uint64_t seed)
        : rules(P.rules), rngState(seed * 2654435769u + 1) {}

    uint64_t rng() {
        rngState ^= rngState << 13;
        rngState ^= rngState >> 7;
        rngState ^= rngState << 17;
        return rngState;
    }

    // Find one applicable (position, rule); deterministic for seed 0,
    // pseudo-random otherwise.
    bool step(const Word& w, size_t& outPos, size_t& outRule) {
        std::vector<std::pair<size_t, size_t>> hits;
        for (size_t pos = 0; pos < w.size(); ++pos)
            for (size_t ri = 0; ri < rules.size(); ++ri) {
                const Word& lhs = rules[ri].lhs;
                if (pos + lhs.size() <= w.size() && w.compare(pos, lhs.size(), lhs) == 0) {
                    if (rngState == 1) {  // seed 0: first match wins
                        outPos = pos;
                        outRule = ri;
                        return true;
                    }
                    hits.emplace_back(pos, ri);
                }
            }
        if (hits.empty()) return false;
        auto pick = hits[rng() % hits.size()];
        outPos = pick.first;
        outRule = pick.second;
        return true;
    }

    LinComb reduce(const Word& start) {
        LinComb done, pending;
        pending[start] = 1;
        while (!pending.empty()) {
            auto it = pending.begin();
            Word w = it->first;
            long long c = it->second;
            pending.erase(it);
            if (c == 0) continue;
            size_t pos, ri;
            if (!step(w, pos, ri)) {
                done[w] += c;
                if (done[w] == 0) done.erase(w);
                continue;
            }
            const auto& rule = rules[ri];
            Word prefix = w.substr(0, pos);
            Word suffix = w.substr(pos + rule.lhs.size());
            for (const auto& [coef, rhsWord] : rule.rhs)
                pending[prefix + rhsWord + suffix] += c * coef;
        }
        return done;
    }
};

}  // namespace

FusionRing complete_from_presentation(const RingPresentation& P, uint64_t rngSeed) {
    const int n = (int)P.basisWords.size();
    Rewriter rw(P, rngSeed);
    // every basis word must already be reduced
    for (const auto& w : P.basisWords) {
        size_t pos, ri;
        if (rw.step(w, pos, ri))
            throw number_error("basis word '" + w + "' is not reduced");
    }
    std::map<Word, int> index;
    for (int i = 0; i < n; ++i) index[P.basisWords[i]] = i;

    FusionRing R;
    R.name = P.name;
    R.fieldD = P.fieldD;
    R.rank = n;
    for (const auto& w : P.basisWords) R.basisNames.push_back(w.empty() ? "1" : w);
    R.dual = P.dual;
    R.N.assign((size_t)n * n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            LinComb prod = rw.reduce(P.basisWords[i] + P.basisWords[j]);
            for (const auto& [w, c] : prod) {
                auto it = index.find(w);
                if (it == index.end())
                    throw number_error("product " + P.basisWords[i] + "*" + P.basisWords[j] +
                                       " reduced to non-basis word '" + w + "'");
                if (c < 0)
                    throw number_error("negative multiplicity in completion");
                R.n(i, j, it->second) = (int)c;
            }
        }
    ValidationReport rep = validate_ring(R);
    if (!rep.ok)
        throw number_error("completion of " + P.name + " failed validation: " + rep.message);
    attach_fp_dimensions(R);
    return R;
}

// ---- built-in presentations and tables ----------------------------------

namespace {

std::vector<std::pair<int, std::string>> combo(
    std::initializer_list<std::pair<int, const char*>> xs) {
    std::vector<std::pair<int, std::string>> out;
    for (auto& [c, w] : xs) out.emplace_back(c, w);
    return out;
}

RingPresentation ah2_presentation() {
    RingPresentation P;
    P.name = "AH2";
    P.fieldD = 17;
    P.symbols = {"a", "r", "p", "h"};
    P.invertibleOrder = 2;
    P.basisWords = {"", "a", "r", "ar", "ra", "ara", "p", "ap", "h"};
    P.dual = {0, 1, 2, 4, 3, 5, 6, 7, 8};  // ar <-> ra
    // Gamma = p + ap + h, Delta = r + ar + ra + ara
    P.rules = {
        {"aa", combo({{1, ""}})},
        {"pa", combo({{1, "ap"}})},
        {"ha", combo({{1, "h"}})},
        {"ah", combo({{1, "h"}})},
        {"rap", combo({{1, "rpa"}})},  // alpha commutes past pi
        {"rar", combo({{1, "ara"}, {1, "h"}})},
        {"rr", combo({{1, ""}, {1, "r"}, {1, "p"}})},
        {"rp", combo({{1, "r"}, {1, "p"}, {1, "ap"}, {1, "h"}})},
        {"pr", combo({{1, "r"}, {1, "p"}, {1, "ap"}, {1, "h"}})},
        {"rh", combo({{1, "ar"}, {1, "ara"}, {1, "p"}, {1, "ap"}, {1, "h"}})},
        {"hr", combo({{1, "ra"}, {1, "ara"}, {1, "p"}, {1, "ap"}, {1, "h"}})},
        {"pp", combo({{1, ""}, {1, "r"}, {1, "ar"}, {1, "ra"}, {1, "ara"},
                      {2, "p"}, {2, "ap"}, {2, "h"}})},
        {"ph", combo({{1, "r"}, {1, "ar"}, {1, "ra"}, {1, "ara"},
                      {2, "p"}, {2, "ap"}, {3, "h"}})},
        {"hp", combo({{1, "r"}, {1, "ar"}, {1, "ra"}, {1, "ara"},
                      {2, "p"}, {2, "ap"}, {3, "h"}})},
        {"hh", combo({{1, ""}, {1, "a"}, {1, "r"}, {1, "ar"}, {1, "ra"}, {1, "ara"},
                      {3, "p"}, {3, "ap"}, {2, "h"}})},
    };
    return P;
}

RingPresentation ah3_presentation() {
    RingPresentation P;
    P.name = "AH3";
    P.fieldD = 17;
    P.symbols = {"b", "x", "m", "n"};
    P.invertibleOrder = 2;
    P.basisWords = {"", "b", "x", "bx", "xb", "bxb", "m", "bm", "n"};
    P.dual = {0, 1, 2, 4, 3, 5, 6, 7, 8};  // bx <-> xb
    // Pi = m + bm + n, Psi = x + bx + xb + bxb
    P.rules = {
        {"bb", combo({{1, ""}})},
        {"mb", combo({{1, "bm"}})},
        {"nb", combo({{1, "n"}})},
        {"bn", combo({{1, "n"}})},
        {"xbm", combo({{1, "xmb"}})},  // beta commutes past mu
        {"xbx", combo({{1, "bxb"}, {1, "m"}, {1, "bm"}})},
        {"xx", combo({{1, ""}, {1, "x"}, {1, "m"}, {1, "n"}})},
        {"xm", combo({{1, "x"}, {1, "bx"}, {1, "bxb"}, {1, "m"}, {1, "bm"}, {1, "n"}})},
        {"mx", combo({{1, "x"}, {1, "xb"}, {1, "bxb"}, {1, "m"}, {1, "bm"}, {1, "n"}})},
        {"xn", combo({{1, "x"}, {1, "xb"}, {1, "m"}, {1, "bm"}, {1, "n"}})},
        {"nx", combo({{1, "x"}, {1, "bx"}, {1, "m"}, {1, "bm"}, {1, "n"}})},
        // mu*mu is pinned by associativity against the other rows:
        // (xi*xi)*mu = xi*(xi*mu) forces 1 + Psi + 2*Pi.
        {"mm", combo({{1, ""}, {2, "m"}, {2, "bm"}, {2, "n"},
                      {1, "x"}, {1, "bx"}, {1, "xb"}, {1, "bxb"}})},
        {"mn", combo({{2, "m"}, {2, "bm"}, {1, "n"},
                      {1, "x"}, {1, "bx"}, {1, "xb"}, {1, "bxb"}})},
        {"nm", combo({{2, "m"}, {2, "bm"}, {1, "n"},
                      {1, "x"}, {1, "bx"}, {1, "xb"}, {1, "bxb"}})},
        {"nn", combo({{1, ""}, {1, "b"}, {1, "m"}, {1, "bm"}, {2, "n"},
                      {1, "x"}, {1, "bx"}, {1, "xb"}, {1, "bxb"}})},
    };
    return P;
}

FusionRing make_ah1() {
    FusionRing R;
    R.name = "AH1";
    R.fieldD = 17;
    R.rank = 6;
    R.basisNames = {"1", "psi", "chi", "sig", "zeta", "tau"};
    R.dual = {0, 1, 2, 3, 4, 5};
    R.N.assign(6 * 6 * 6, 0);
    auto set = [&](int i, int j, std::initializer_list<int> row) {
        int k = 0;
        for (int v : row) R.n(i, j, k++) = v;
        k = 0;
        for (int v : row) R.n(j, i, k++) = v;  // commutative
    };
    for (int k = 0; k < 6; ++k) {
        R.n(0, k, k) = 1;
        R.n(k, 0, k) = 1;
    }
    //                 1  psi chi sig zeta tau
    set(1, 1, {1, 1, 0, 0, 1, 0});
    set(1, 2, {0, 0, 1, 0, 0, 1});
    set(1, 3, {0, 0, 0, 0, 1, 1});
    set(1, 4, {0, 1, 0, 1, 1, 1});
    set(1, 5, {0, 0, 1, 1, 1, 2});
    set(2, 2, {1, 1, 1, 0, 0, 1});
    set(2, 3, {0, 0, 0, 1, 1, 1});
    set(2, 4, {0, 0, 0, 1, 1, 2});
    set(2, 5, {0, 1, 1, 1, 2, 2});
    set(3, 3, {1, 0, 1, 1, 1, 1});
    set(3, 4, {0, 1, 1, 1, 1, 2});
    set(3, 5, {0, 1, 1, 1, 2, 3});
    set(4, 4, {1, 1, 1, 1, 2, 3});
    set(4, 5, {0, 1, 2, 2, 3, 4});
    set(5, 5, {1, 2, 2, 3, 4, 6});
    ValidationReport rep = validate_ring(R);
    if (!rep.ok) throw number_error("AH1 table invalid: " + rep.message);
    attach_fp_dimensions(R);
    return R;
}

FusionRing make_group_ring(const std::string& name, int order, int fieldD) {
    FusionRing R;
    R.name = name;
    R.fieldD = fieldD;
    R.rank = order;
    for (int i = 0; i < order; ++i)
        R.basisNames.push_back(i == 0 ? "1" : "g" + std::to_string(i));
    for (int i = 0; i < order; ++i) R.dual.push_back((order - i) % order);
    R.N.assign((size_t)order * order * order, 0);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) R.n(i, j, (i + j) % order) = 1;
    attach_fp_dimensions(R);
    return R;
}

FusionRing make_fib() {
    FusionRing R;
    R.name = "Fib";
    R.fieldD = 5;
    R.rank = 2;
    R.basisNames = {"1", "t"};
    R.dual = {0, 1};
    R.N.assign(8, 0);
    R.n(0, 0, 0) = R.n(0, 1, 1) = R.n(1, 0, 1) = 1;
    R.n(1, 1, 0) = R.n(1, 1, 1) = 1;  // t*t = 1 + t
    attach_fp_dimensions(R);
    return R;
}

FusionRing make_ising() {
    FusionRing R;
    R.name = "Ising";
    R.fieldD = 2;
    R.rank = 3;
    R.basisNames = {"1", "e", "s"};
    R.dual = {0, 1, 2};
    R.N.assign(27, 0);
    for (int k = 0; k < 3; ++k) {
        R.n(0, k, k) = 1;
        R.n(k, 0, k) = 1;
    }
    R.n(1, 1, 0) = 1;                  // e*e = 1
    R.n(1, 2, 2) = R.n(2, 1, 2) = 1;   // e*s = s*e = s
    R.n(2, 2, 0) = R.n(2, 2, 1) = 1;   // s*s = 1 + e
    attach_fp_dimensions(R);
    return R;
}

FusionRing make_trivial() {
    FusionRing R;
    R.name = "Trivial";
    R.fieldD = 1;
    R.rank = 1;
    R.basisNames = {"1"};
    R.dual = {0};
    R.N = {1};
    attach_fp_dimensions(R);
    return R;
}

const char* const kAH2Snapshot = R"snap(%ring AH2
%field 17
%rank 9
%basis 1 a r ar ra ara p ap h
%dual 0 1 2 4 3 5 6 7 8
%dim2 1|1|13/2+3/2*r|13/2+3/2*r|13/2+3/2*r|13/2+3/2*r|33+8*r|33+8*r|42+10*r
%N
1 0 0 0 0 0 0 0 0
0 1 0 0 0 0 0 0 0
0 0 1 0 0 0 0 0 0
0 0 0 1 0 0 0 0 0
0 0 0 0 1 0 0 0 0
0 0 0 0 0 1 0 0 0
0 0 0 0 0 0 1 0 0
0 0 0 0 0 0 0 1 0
0 0 0 0 0 0 0 0 1
0 1 0 0 0 0 0 0 0
1 0 0 0 0 0 0 0 0
0 0 0 1 0 0 0 0 0
0 0 1 0 0 0 0 0 0
0 0 0 0 0 1 0 0 0
0 0 0 0 1 0 0 0 0
0 0 0 0 0 0 0 1 0
0 0 0 0 0 0 1 0 0
0 0 0 0 0 0 0 0 1
0 0 1 0 0 0 0 0 0
0 0 0 0 1 0 0 0 0
1 0 1 0 0 0 1 0 0
0 0 0 0 0 1 0 0 1
0 1 0 0 1 0 0 1 0
0 0 0 1 0 0 0 0 1
0 0 1 0 0 0 1 1 1
0 0 0 0 1 0 1 1 1
0 0 0 1 0 1 1 1 1
0 0 0 1 0 0 0 0 0
0 0 0 0 0 1 0 0 0
0 1 0 1 0 0 0 1 0
0 0 0 0 1 0 0 0 1
1 0 0 0 0 1 1 0 0
0 0 1 0 0 0 0 0 1
0 0 0 1 0 0 1 1 1
0 0 0 0 0 1 1 1 1
0 0 1 0 1 0 1 1 1
0 0 0 0 1 0 0 0 0
0 0 1 0 0 0 0 0 0
0 0 0 0 0 1 0 0 1
1 0 1 0 0 0 1 0 0
0 0 0 1 0 0 0 0 1
0 1 0 0 1 0 0 1 0
0 0 0 0 1 0 1 1 1
0 0 1 0 0 0 1 1 1
0 0 0 1 0 1 1 1 1
0 0 0 0 0 1 0 0 0
0 0 0 1 0 0 0 0 0
0 0 0 0 1 0 0 0 1
0 1 0 1 0 0 0 1 0
0 0 1 0 0 0 0 0 1
1 0 0 0 0 1 1 0 0
0 0 0 0 0 1 1 1 1
0 0 0 1 0 0 1 1 1
0 0 1 0 1 0 1 1 1
0 0 0 0 0 0 1 0 0
0 0 0 0 0 0 0 1 0
0 0 1 0 0 0 1 1 1
0 0 0 1 0 0 1 1 1
0 0 0 0 1 0 1 1 1
0 0 0 0 0 1 1 1 1
1 0 1 1 1 1 2 2 2
0 1 1 1 1 1 2 2 2
0 0 1 1 1 1 2 2 3
0 0 0 0 0 0 0 1 0
0 0 0 0 0 0 1 0 0
0 0 0 1 0 0 1 1 1
0 0 1 0 0 0 1 1 1
0 0 0 0 0 1 1 1 1
0 0 0 0 1 0 1 1 1
0 1 1 1 1 1 2 2 2
1 0 1 1 1 1 2 2 2
0 0 1 1 1 1 2 2 3
0 0 0 0 0 0 0 0 1
0 0 0 0 0 0 0 0 1
0 0 0 0 1 1 1 1 1
0 0 0 0 1 1 1 1 1
0 0 1 1 0 0 1 1 1
0 0 1 1 0 0 1 1 1
0 0 1 1 1 1 2 2 3
0 0 1 1 1 1 2 2 3
1 1 1 1 1 1 3 3 2
%end
)snap";

const char* const kAH3Snapshot = R"snap(%ring AH3
%field 17
%rank 9
%basis 1 b x bx xb bxb m bm n
%dual 0 1 2 4 3 5 6 7 8
%dim2 1|1|21/2+5/2*r|21/2+5/2*r|21/2+5/2*r|21/2+5/2*r|33+8*r|33+8*r|26+6*r
%N
1 0 0 0 0 0 0 0 0
0 1 0 0 0 0 0 0 0
0 0 1 0 0 0 0 0 0
0 0 0 1 0 0 0 0 0
0 0 0 0 1 0 0 0 0
0 0 0 0 0 1 0 0 0
0 0 0 0 0 0 1 0 0
0 0 0 0 0 0 0 1 0
0 0 0 0 0 0 0 0 1
0 1 0 0 0 0 0 0 0
1 0 0 0 0 0 0 0 0
0 0 0 1 0 0 0 0 0
0 0 1 0 0 0 0 0 0
0 0 0 0 0 1 0 0 0
0 0 0 0 1 0 0 0 0
0 0 0 0 0 0 0 1 0
0 0 0 0 0 0 1 0 0
0 0 0 0 0 0 0 0 1
0 0 1 0 0 0 0 0 0
0 0 0 0 1 0 0 0 0
1 0 1 0 0 0 1 0 1
0 0 0 0 0 1 1 1 0
0 1 0 0 1 0 0 1 1
0 0 0 1 0 0 1 1 0
0 0 1 1 0 1 1 1 1
0 0 0 1 1 1 1 1 1
0 0 1 0 1 0 1 1 1
0 0 0 1 0 0 0 0 0
0 0 0 0 0 1 0 0 0
0 1 0 1 0 0 0 1 1
0 0 0 0 1 0 1 1 0
1 0 0 0 0 1 1 0 1
0 0 1 0 0 0 1 1 0
0 0 1 1 1 0 1 1 1
0 0 1 0 1 1 1 1 1
0 0 0 1 0 1 1 1 1
0 0 0 0 1 0 0 0 0
0 0 1 0 0 0 0 0 0
0 0 0 0 0 1 1 1 0
1 0 1 0 0 0 1 0 1
0 0 0 1 0 0 1 1 0
0 1 0 0 1 0 0 1 1
0 0 0 1 1 1 1 1 1
0 0 1 1 0 1 1 1 1
0 0 1 0 1 0 1 1 1
0 0 0 0 0 1 0 0 0
0 0 0 1 0 0 0 0 0
0 0 0 0 1 0 1 1 0
0 1 0 1 0 0 0 1 1
0 0 1 0 0 0 1 1 0
1 0 0 0 0 1 1 0 1
0 0 1 0 1 1 1 1 1
0 0 1 1 1 0 1 1 1
0 0 0 1 0 1 1 1 1
0 0 0 0 0 0 1 0 0
0 0 0 0 0 0 0 1 0
0 0 1 0 1 1 1 1 1
0 0 0 1 1 1 1 1 1
0 0 1 1 1 0 1 1 1
0 0 1 1 0 1 1 1 1
1 0 1 1 1 1 2 2 2
0 1 1 1 1 1 2 2 2
0 0 1 1 1 1 2 2 1
0 0 0 0 0 0 0 1 0
0 0 0 0 0 0 1 0 0
0 0 0 1 1 1 1 1 1
0 0 1 0 1 1 1 1 1
0 0 1 1 0 1 1 1 1
0 0 1 1 1 0 1 1 1
0 1 1 1 1 1 2 2 2
1 0 1 1 1 1 2 2 2
0 0 1 1 1 1 2 2 1
0 0 0 0 0 0 0 0 1
0 0 0 0 0 0 0 0 1
0 0 1 1 0 0 1 1 1
0 0 1 1 0 0 1 1 1
0 0 0 0 1 1 1 1 1
0 0 0 0 1 1 1 1 1
0 0 1 1 1 1 2 2 1
0 0 1 1 1 1 2 2 1
1 1 1 1 1 1 1 1 2
%end
)snap";

std::map<std::string, FusionRing>& ring_table() {
    static std::map<std::string, FusionRing> table = [] {
        std::map<std::string, FusionRing> t;
        t.emplace("Trivial", make_trivial());
        t.emplace("Z2", make_group_ring("Z2", 2, 1));
        t.emplace("Z3", make_group_ring("Z3", 3, 1));
        t.emplace("Fib", make_fib());
        t.emplace("Ising", make_ising());
        t.emplace("AH1", make_ah1());
        // AH2/AH3 tensors were derived once by word-reduction completion of
        // the table presentations and are pinned here; tests re-run the
        // completion (with shuffled reduction orders) against these snapshots.
        t.emplace("AH2", parse_ring(kAH2Snapshot));
        t.emplace("AH3", parse_ring(kAH3Snapshot));
        return t;
    }();
    return table;
}

}  // namespace

const FusionRing& builtin_ring(const std::string& name) {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& t = ring_table();
    auto it = t.find(name);
    if (it == t.end()) throw number_error("unknown builtin ring '" + name + "'");
    return it->second;
}

std::vector<std::string> builtin_ring_names() {
    return {"AH1", "AH2", "AH3", "Fib", "Z2", "Z3", "Trivial", "Ising"};
}

RingPresentation builtin_presentation(const std::string& name) {
    if (name == "AH2") return ah2_presentation();
    if (name == "AH3") return ah3_presentation();
    if (name == "Z2") {
        RingPresentation P;
        P.name = "Z2p";
        P.fieldD = 1;
        P.symbols = {"a"};
        P.invertibleOrder = 2;
        P.basisWords = {"", "a"};
        P.dual = {0, 1};
        P.rules = {{"aa", {{1, ""}}}};
        return P;
    }
    throw number_error("no presentation for '" + name + "'");
}

}  // namespace fusioncat
