#include "fusioncat/bimodule.hpp"

#include "fusioncat/parallel.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace fusioncat {

RingElement FusionBimodule::left_end(int t) const {
    RingElement e(*leftRing);
    for (int i = 0; i < leftRing->rank; ++i) e.coeffs[i] = l(i, t, t);
    return e;
}

RingElement FusionBimodule::right_end(int t) const {
    RingElement e(*rightRing);
    for (int j = 0; j < rightRing->rank; ++j) e.coeffs[j] = r(j, t, t);
    return e;
}

FusionModule FusionBimodule::left_module() const {
    FusionModule M;
    M.ring = leftRing;
    M.side = Side::Left;
    M.rank = rank;
    M.act = lact;
    M.dim2 = dim2;
    return M;
}

FusionModule FusionBimodule::right_module() const {
    FusionModule M;
    M.ring = rightRing;
    M.side = Side::Right;
    M.rank = rank;
    M.act = ract;
    M.dim2 = dim2;
    return M;
}

namespace {

bool quad_vec_eq(const std::vector<QuadExt>& a, const std::vector<QuadExt>& b) {
    return a == b;
}

// Dimension-preserving identification search.  The right module's basis is
// re-labelled by s (slot in right module -> slot of the bimodule basis) and
// the actions must commute: lact[i] * ract[j] == ract[j] * lact[i].
struct PairSearch {
    const FusionRing& RL;
    const FusionRing& RR;
    const FusionModule& ML;        // left module, basis fixed
    const FusionModule& MRopp;     // right module's action tensor (right form)
    int m;
    std::vector<std::pair<int, int>> blocks;  // dim2 runs (shared, both ascending)
    std::vector<int> perm;                    // right slot -> bimodule slot
    std::vector<char> used;
    std::vector<FusionBimodule> out;

    PairSearch(const FusionModule& ml, const FusionModule& mrOpp)
        : RL(*ml.ring), RR(*mrOpp.ring), ML(ml), MRopp(mrOpp), m(ml.rank) {
        for (int s = 0; s < m;) {
            int e = s;
            while (e < m && ml.dim2[e] == ml.dim2[s]) ++e;
            blocks.emplace_back(s, e);
            s = e;
        }
        perm.assign(m, -1);
        used.assign(m, 0);
    }

    // ract under the current (partial) identification
    int32_t ract_at(int j, int s, int t) const {
        // defined only when both preimages are set; callers guarantee that
        return MRopp.a(j, pre[s], pre[t]);
    }
    std::vector<int> pre;  // bimodule slot -> right slot

    void run() {
        pre.assign(m, -1);
        place(0);
    }

    void place(int rs) {
        if (rs == m) {
            finish();
            return;
        }
        // right slot rs may map to any free bimodule slot of the same block
        int b = 0;
        while (blocks[b].second <= rs) ++b;
        for (int t = blocks[b].first; t < blocks[b].second; ++t) {
            if (used[t]) continue;
            perm[rs] = t;
            pre[t] = rs;
            used[t] = 1;
            if (partial_ok(rs)) place(rs + 1);
            used[t] = 0;
            pre[t] = -1;
            perm[rs] = -1;
        }
    }

    // commutation restricted to entries determined by the slots placed so far:
    // (lact[i] ract[j])[s][t] needs ract rows/cols at placed slots only when
    // the middle index is placed; full check happens at the end, this partial
    // filter uses pairs of placed slots with complete middles.
    bool partial_ok(int rs) {
        int t = perm[rs];
        // for every placed pair (u,v) with all middles placed, compare; cheap
        // version: only check pairs involving t and only middles placed
        for (int u = 0; u < m; ++u) {
            if (pre[u] < 0) continue;
            bool allMid = true;
            for (int w = 0; w < m && allMid; ++w)
                if (pre[w] < 0 && (mid_needed(u, t, w) || mid_needed(t, u, w))) allMid = false;
            if (!allMid) continue;
            for (int i = 1; i < RL.rank; ++i)
                for (int j = 1; j < RR.rank; ++j) {
                    long long a = 0, b = 0, c = 0, d = 0;
                    for (int w = 0; w < m; ++w) {
                        if (pre[w] >= 0) {
                            a += (long long)ML.a(i, u, w) * ract_at(j, w, t);
                            b += (long long)ract_at(j, u, w) * ML.a(i, w, t);
                            c += (long long)ML.a(i, t, w) * ract_at(j, w, u);
                            d += (long long)ract_at(j, t, w) * ML.a(i, w, u);
                        }
                    }
                    if (a != b || c != d) return false;
                }
        }
        return true;
    }

    bool mid_needed(int u, int t, int w) const {
        // middle w contributes to (u,t) commutation entries if either factor
        // can be nonzero; unplaced ract entries are unknown, so require the
        // lact factor to vanish on both sides
        for (int i = 1; i < RL.rank; ++i)
            if (ML.a(i, u, w) || ML.a(i, w, t)) return true;
        return false;
    }

    void finish() {
        FusionBimodule B;
        B.leftRing = &RL;
        B.rightRing = &RR;
        B.rank = m;
        B.dim2 = ML.dim2;
        B.lact = ML.act;
        B.ract.assign((size_t)RR.rank * m * m, 0);
        for (int j = 0; j < RR.rank; ++j)
            for (int s = 0; s < m; ++s)
                for (int t = 0; t < m; ++t) B.r(j, s, t) = MRopp.a(j, pre[s], pre[t]);
        // full commutation
        for (int i = 1; i < RL.rank; ++i)
            for (int j = 1; j < RR.rank; ++j)
                for (int s = 0; s < m; ++s)
                    for (int t = 0; t < m; ++t) {
                        long long x = 0, y = 0;
                        for (int w = 0; w < m; ++w) {
                            x += (long long)B.l(i, s, w) * B.r(j, w, t);
                            y += (long long)B.r(j, s, w) * B.l(i, w, t);
                        }
                        if (x != y) return;
                    }
        // bimodule admissibility:
        //   (mu nu-bar, mu nu-bar) = (mu-bar mu, nu-bar nu)
        //   (mu-bar nu, mu-bar nu) = (mu mu-bar, nu nu-bar)
        for (int t = 0; t < m; ++t)
            for (int u = 0; u < m; ++u) {
                long long lhs1 = 0, rhs1 = 0, lhs2 = 0, rhs2 = 0;
                for (int i = 0; i < RL.rank; ++i) lhs1 += (long long)B.l(i, u, t) * B.l(i, u, t);
                for (int j = 0; j < RR.rank; ++j) rhs1 += (long long)B.r(j, t, t) * B.r(j, u, u);
                if (lhs1 != rhs1) return;
                for (int j = 0; j < RR.rank; ++j) lhs2 += (long long)B.r(j, t, u) * B.r(j, t, u);
                for (int i = 0; i < RL.rank; ++i) rhs2 += (long long)B.l(i, t, t) * B.l(i, u, u);
                if (lhs2 != rhs2) return;
            }
        out.push_back(canonical_bimodule(B));
    }
};

}  // namespace

std::vector<FusionBimodule> enumerate_fusion_bimodules(const FusionRing& RL,
                                                       const FusionRing& RR,
                                                       const ModuleCatalog& leftMods,
                                                       const ModuleCatalog& rightMods,
                                                       int jobs) {
    if (leftMods.ring != &RL || rightMods.ring != &RR || leftMods.side != Side::Left ||
        rightMods.side != Side::Right)
        throw number_error("enumerate_fusion_bimodules: catalog/ring mismatch");
    // candidate pairs share the dimension vector
    std::vector<std::pair<int, int>> pairs;
    for (size_t a = 0; a < leftMods.mods.size(); ++a)
        for (size_t b = 0; b < rightMods.mods.size(); ++b)
            if (leftMods.mods[a].rank == rightMods.mods[b].rank &&
                quad_vec_eq(leftMods.mods[a].dim2, rightMods.mods[b].dim2))
                pairs.emplace_back((int)a, (int)b);
    std::vector<std::vector<FusionBimodule>> per(pairs.size());
    parallel_for(jobs, pairs.size(), [&](size_t pi) {
        const FusionModule& ml = leftMods.mods[pairs[pi].first];
        const FusionModule& mr = rightMods.mods[pairs[pi].second];
        PairSearch ps(ml, mr);
        ps.run();
        per[pi] = std::move(ps.out);
    });
    std::vector<FusionBimodule> all;
    for (auto& v : per)
        for (auto& b : v) all.push_back(std::move(b));
    std::sort(all.begin(), all.end(), bimodule_less);
    all.erase(std::unique(all.begin(), all.end(),
                          [](const FusionBimodule& a, const FusionBimodule& b) {
                              return a.lact == b.lact && a.ract == b.ract && a.dim2 == b.dim2;
                          }),
              all.end());
    return all;
}

BimoduleCatalog enumerate_bimodule_catalog(const FusionRing& RL, const FusionRing& RR, int jobs) {
    ModuleCatalog lm = enumerate_fusion_modules(RL, Side::Left, jobs);
    ModuleCatalog rm = enumerate_fusion_modules(RR, Side::Right, jobs);
    BimoduleCatalog cat;
    cat.leftRing = &RL;
    cat.rightRing = &RR;
    cat.entries = enumerate_fusion_bimodules(RL, RR, lm, rm, jobs);
    return cat;
}

FusionBimodule dual_bimodule(const FusionBimodule& B) {
    FusionBimodule D;
    D.leftRing = B.rightRing;
    D.rightRing = B.leftRing;
    D.rank = B.rank;
    D.dim2 = B.dim2;
    D.lact.assign(B.ract.size(), 0);
    D.ract.assign(B.lact.size(), 0);
    int m = B.rank;
    for (int j = 0; j < B.rightRing->rank; ++j)
        for (int s = 0; s < m; ++s)
            for (int t = 0; t < m; ++t) D.l(j, s, t) = B.r(j, t, s);
    for (int i = 0; i < B.leftRing->rank; ++i)
        for (int s = 0; s < m; ++s)
            for (int t = 0; t < m; ++t) D.r(i, s, t) = B.l(i, t, s);
    return D;
}

FusionBimodule identity_bimodule(const FusionRing& R) {
    FusionBimodule B;
    B.leftRing = &R;
    B.rightRing = &R;
    B.rank = R.rank;
    // basis ordered by dimension (ascending) to match catalog normal form
    std::vector<int> ord(R.rank);
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
        if (R.fpDim2[a] == R.fpDim2[b]) return false;
        return quad_less(R.fpDim2[a], R.fpDim2[b]);
    });
    for (int s = 0; s < R.rank; ++s) B.dim2.push_back(R.fpDim2[ord[s]]);
    B.lact.assign((size_t)R.rank * R.rank * R.rank, 0);
    B.ract = B.lact;
    for (int i = 0; i < R.rank; ++i)
        for (int s = 0; s < R.rank; ++s)
            for (int t = 0; t < R.rank; ++t) {
                B.l(i, s, t) = R.n(i, ord[s], ord[t]);
                B.r(i, s, t) = R.n(ord[s], i, ord[t]);
            }
    return canonical_bimodule(B);
}

FusionModule restrict_module(const FusionBimodule& B, Side side) {
    FusionModule M = side == Side::Left ? B.left_module() : B.right_module();
    ValidationReport rep = validate_module(M);
    if (!rep.ok)
        throw number_error("bimodule restriction is not a valid module: " + rep.message);
    return M;
}

int restrict_to_catalog(const FusionBimodule& B, Side side, const ModuleCatalog& cat) {
    FusionModule M = restrict_module(B, side);
    if (side == Side::Right) M = opposite_module(M);  // catalogs hold left modules
    FusionModule C = canonical_module(M);
    for (size_t i = 0; i < cat.mods.size(); ++i)
        if (cat.mods[i].rank == C.rank && cat.mods[i].dim2 == C.dim2 &&
            cat.mods[i].act == C.act)
            return (int)i;
    // canonical forms must match an entry; fall back to iso search for safety
    for (size_t i = 0; i < cat.mods.size(); ++i)
        if (module_iso(C, cat.mods[i])) return (int)i;
    throw number_error("restriction not found in module catalog");
}

namespace {

void for_each_dim_perm_b(const std::vector<QuadExt>& dim2,
                         const std::function<bool(const std::vector<int>&)>& f) {
    int m = (int)dim2.size();
    std::vector<std::pair<int, int>> blocks;
    for (int s = 0; s < m;) {
        int e = s;
        while (e < m && dim2[e] == dim2[s]) ++e;
        blocks.emplace_back(s, e);
        s = e;
    }
    std::vector<std::vector<int>> perms(blocks.size());
    for (size_t b = 0; b < blocks.size(); ++b) {
        perms[b].resize(blocks[b].second - blocks[b].first);
        std::iota(perms[b].begin(), perms[b].end(), blocks[b].first);
    }
    std::vector<int> p(m);
    auto rec = [&](auto&& self, size_t b) -> bool {
        if (b == blocks.size()) return f(p);
        auto& bp = perms[b];
        std::sort(bp.begin(), bp.end());
        do {
            for (int i = blocks[b].first; i < blocks[b].second; ++i)
                p[i] = bp[i - blocks[b].first];
            if (!self(self, b + 1)) return false;
        } while (std::next_permutation(bp.begin(), bp.end()));
        return true;
    };
    rec(rec, 0);
}

std::pair<std::vector<int32_t>, std::vector<int32_t>> permuted_acts(const FusionBimodule& B,
                                                                    const std::vector<int>& p) {
    std::vector<int32_t> L(B.lact.size()), R(B.ract.size());
    int m = B.rank;
    for (int i = 0; i < B.leftRing->rank; ++i)
        for (int s = 0; s < m; ++s)
            for (int t = 0; t < m; ++t)
                L[((size_t)i * m + p[s]) * m + p[t]] = B.l(i, s, t);
    for (int j = 0; j < B.rightRing->rank; ++j)
        for (int s = 0; s < m; ++s)
            for (int t = 0; t < m; ++t)
                R[((size_t)j * m + p[s]) * m + p[t]] = B.r(j, s, t);
    return {std::move(L), std::move(R)};
}

}  // namespace

FusionBimodule canonical_bimodule(const FusionBimodule& B) {
    FusionBimodule out = B;
    std::vector<int32_t> bestL = B.lact, bestR = B.ract;
    for_each_dim_perm_b(B.dim2, [&](const std::vector<int>& p) {
        auto [L, R] = permuted_acts(B, p);
        if (L < bestL || (L == bestL && R < bestR)) {
            bestL = std::move(L);
            bestR = std::move(R);
        }
        return true;
    });
    out.lact = std::move(bestL);
    out.ract = std::move(bestR);
    return out;
}

bool bimodule_less(const FusionBimodule& A, const FusionBimodule& B) {
    if (A.rank != B.rank) return A.rank < B.rank;
    for (int s = 0; s < A.rank; ++s) {
        if (A.dim2[s] == B.dim2[s]) continue;
        return quad_less(A.dim2[s], B.dim2[s]);
    }
    if (A.lact != B.lact) return A.lact < B.lact;
    return A.ract < B.ract;
}

std::optional<std::vector<int>> bimodule_iso(const FusionBimodule& A, const FusionBimodule& B) {
    if (A.leftRing != B.leftRing || A.rightRing != B.rightRing || A.rank != B.rank)
        return std::nullopt;
    if (A.dim2 != B.dim2) return std::nullopt;
    std::optional<std::vector<int>> hit;
    for_each_dim_perm_b(A.dim2, [&](const std::vector<int>& p) {
        auto [L, R] = permuted_acts(A, p);
        if (L == B.lact && R == B.ract) {
            hit = p;
            return false;
        }
        return true;
    });
    return hit;
}

ValidationReport validate_bimodule(const FusionBimodule& B) {
    auto bad = [&](const std::string& msg) {
        return ValidationReport{false, RingAxiom::Shape, msg};
    };
    ValidationReport rep = validate_module(B.left_module());
    if (!rep.ok) return bad("left part: " + rep.message);
    rep = validate_module(B.right_module());
    if (!rep.ok) return bad("right part: " + rep.message);
    int m = B.rank;
    for (int i = 0; i < B.leftRing->rank; ++i)
        for (int j = 0; j < B.rightRing->rank; ++j)
            for (int s = 0; s < m; ++s)
                for (int t = 0; t < m; ++t) {
                    long long x = 0, y = 0;
                    for (int w = 0; w < m; ++w) {
                        x += (long long)B.l(i, s, w) * B.r(j, w, t);
                        y += (long long)B.r(j, s, w) * B.l(i, w, t);
                    }
                    if (x != y) return bad("actions do not commute");
                }
    for (int t = 0; t < m; ++t)
        for (int u = 0; u < m; ++u) {
            long long lhs1 = 0, rhs1 = 0, lhs2 = 0, rhs2 = 0;
            for (int i = 0; i < B.leftRing->rank; ++i)
                lhs1 += (long long)B.l(i, u, t) * B.l(i, u, t);
            for (int j = 0; j < B.rightRing->rank; ++j)
                rhs1 += (long long)B.r(j, t, t) * B.r(j, u, u);
            if (lhs1 != rhs1) return bad("admissibility (mu nu-bar)");
            for (int j = 0; j < B.rightRing->rank; ++j)
                lhs2 += (long long)B.r(j, t, u) * B.r(j, t, u);
            for (int i = 0; i < B.leftRing->rank; ++i)
                rhs2 += (long long)B.l(i, t, t) * B.l(i, u, u);
            if (lhs2 != rhs2) return bad("admissibility (mu-bar nu)");
        }
    return ValidationReport{};
}

// ---- bimodule file format ---------------------------------------------------

std::string render_bimodule(const FusionBimodule& B, int index) {
    std::ostringstream out;
    out << "%bimodule " << B.leftRing->name << " " << B.rightRing->name << " " << index << "\n";
    out << "%rank " << B.rank << "\n%dim2 ";
    for (int s = 0; s < B.rank; ++s) out << (s ? "|" : "") << render_quadext(B.dim2[s]);
    out << "\n%leftaction\n";
    for (int i = 0; i < B.leftRing->rank; ++i)
        for (int s = 0; s < B.rank; ++s) {
            for (int t = 0; t < B.rank; ++t) out << (t ? " " : "") << B.l(i, s, t);
            out << "\n";
        }
    out << "%rightaction\n";
    for (int j = 0; j < B.rightRing->rank; ++j)
        for (int s = 0; s < B.rank; ++s) {
            for (int t = 0; t < B.rank; ++t) out << (t ? " " : "") << B.r(j, s, t);
            out << "\n";
        }
    out << "%end\n";
    return out.str();
}

std::string render_bimodule_catalog(const BimoduleCatalog& cat) {
    std::string out;
    for (size_t i = 0; i < cat.entries.size(); ++i)
        out += render_bimodule(cat.entries[i], (int)i);
    return out;
}

BimoduleCatalog parse_bimodule_catalog(const std::string& text, const FusionRing& RL,
                                       const FusionRing& RR) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string l;
        while (std::getline(in, l)) lines.push_back(l);
    }
    auto fail = [](size_t line, const std::string& what) {
        throw number_error("line " + std::to_string(line + 1) + ": " + what);
    };
    auto fieldsOf = [](const std::string& l) {
        std::vector<std::string> out;
        std::istringstream in(l);
        std::string f;
        while (in >> f) out.push_back(f);
        return out;
    };
    BimoduleCatalog cat;
    cat.leftRing = &RL;
    cat.rightRing = &RR;
    size_t cur = 0;
    auto need = [&](const char* tag) {
        while (cur < lines.size() && (lines[cur].empty() || lines[cur][0] == '#')) ++cur;
        if (cur >= lines.size()) fail(cur, std::string("expected ") + tag);
        auto f = fieldsOf(lines[cur]);
        if (f.empty() || f[0] != tag) fail(cur, std::string("expected ") + tag);
        ++cur;
        return f;
    };
    while (true) {
        while (cur < lines.size() && (lines[cur].empty() || lines[cur][0] == '#')) ++cur;
        if (cur >= lines.size()) break;
        FusionBimodule B;
        B.leftRing = &RL;
        B.rightRing = &RR;
        auto head = need("%bimodule");
        if (head.size() != 4 || head[1] != RL.name || head[2] != RR.name)
            fail(cur - 1, "%bimodule header mismatch");
        B.rank = std::stoi(need("%rank").at(1));
        if (B.rank <= 0 || B.rank > 256) fail(cur - 1, "bad rank");
        auto dimF = need("%dim2");
        {
            std::string curTok;
            std::vector<std::string> toks;
            for (char c : dimF.at(1))
                if (c == '|') {
                    toks.push_back(curTok);
                    curTok.clear();
                } else
                    curTok += c;
            toks.push_back(curTok);
            if ((int)toks.size() != B.rank) fail(cur - 1, "wrong dim2 count");
            for (auto& t : toks) B.dim2.push_back(parse_quadext(t, RL.fieldD));
        }
        need("%leftaction");
        B.lact.assign((size_t)RL.rank * B.rank * B.rank, 0);
        for (int i = 0; i < RL.rank; ++i)
            for (int s = 0; s < B.rank; ++s) {
                if (cur >= lines.size()) fail(cur, "truncated %leftaction");
                auto f = fieldsOf(lines[cur]);
                if ((int)f.size() != B.rank) fail(cur, "wrong row width");
                for (int t = 0; t < B.rank; ++t) B.l(i, s, t) = std::stoi(f[t]);
                ++cur;
            }
        need("%rightaction");
        B.ract.assign((size_t)RR.rank * B.rank * B.rank, 0);
        for (int j = 0; j < RR.rank; ++j)
            for (int s = 0; s < B.rank; ++s) {
                if (cur >= lines.size()) fail(cur, "truncated %rightaction");
                auto f = fieldsOf(lines[cur]);
                if ((int)f.size() != B.rank) fail(cur, "wrong row width");
                for (int t = 0; t < B.rank; ++t) B.r(j, s, t) = std::stoi(f[t]);
                ++cur;
            }
        need("%end");
        ValidationReport rep = validate_bimodule(B);
        if (!rep.ok) throw number_error("bimodule file invalid: " + rep.message);
        cat.entries.push_back(std::move(B));
    }
    return cat;
}

}  // namespace fusioncat
