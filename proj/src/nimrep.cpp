#include "fusioncat/nimrep.hpp"

#include "fusioncat/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fusioncat {

RingElement FusionModule::internal_end(int s) const {
    RingElement e(*ring);
    for (int i = 0; i < ring->rank; ++i) e.coeffs[i] = a(i, s, s);
    return e;
}

IntMat internal_end_matrix(const RingElement& xi) {
    const FusionRing& R = *xi.ring;
    auto M = right_mult_matrix(xi);
    IntMat out(R.rank, R.rank);
    for (int i = 0; i < R.rank; ++i)
        for (int j = 0; j < R.rank; ++j) out.at(i, j) = (int32_t)M[(size_t)i * R.rank + j];
    return out;
}

std::vector<RingElement> candidate_internal_ends(const FusionRing& R) {
    const int n = R.rank;
    // integer bound floor(d(eta)) per coordinate
    std::vector<int> bound(n);
    for (int i = 0; i < n; ++i) {
        int k = 0;
        while (quad_sign(R.fpDim[i] - QuadExt(k + 1)) >= 0) ++k;
        bound[i] = k;
    }
    // free coordinates: one per dual orbit, unit pinned to 1
    std::vector<int> freeIdx;
    for (int i = 1; i < n; ++i)
        if (i <= R.dual[i]) freeIdx.push_back(i);

    std::vector<RingElement> out;
    std::vector<int> c(n, 0);
    c[0] = 1;
    auto rec = [&](auto&& self, size_t fi) -> void {
        if (fi == freeIdx.size()) {
            RingElement xi(R);
            for (int i = 0; i < n; ++i) xi.coeffs[i] = c[i];
            IntMat M = internal_end_matrix(xi);
            // cheap necessary conditions before the exact LDL^T
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < i; ++j) {
                    if (M.at(i, j) != M.at(j, i)) return;  // cannot happen for dual-symmetric xi
                    if ((long long)M.at(i, i) * M.at(j, j) < (long long)M.at(i, j) * M.at(i, j))
                        return;
                }
            std::vector<long long> ml(M.v.begin(), M.v.end());
            if (is_psd_exact(ml, n)) out.push_back(std::move(xi));
            return;
        }
        int i = freeIdx[fi];
        for (int v = 0; v <= bound[i]; ++v) {
            c[i] = v;
            c[R.dual[i]] = v;
            self(self, fi + 1);
        }
        c[i] = 0;
        c[R.dual[i]] = 0;
        return;
    };
    rec(rec, 0);
    return out;
}

namespace {

bool quad_vec_less(const std::vector<QuadExt>& a, const std::vector<QuadExt>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        return quad_less(a[i], b[i]);
    }
    return false;
}

}  // namespace

std::vector<CandidateMatrix> candidate_fusion_matrices(const FusionRing& R, int jobs) {
    std::vector<RingElement> ends = candidate_internal_ends(R);
    std::vector<std::vector<CandidateMatrix>> perEnd(ends.size());
    parallel_for(jobs, ends.size(), [&](size_t e) {
        const RingElement& xi = ends[e];
        QuadExt dxi = elem_dim(xi);
        IntMat M = internal_end_matrix(xi);
        for (IntMat& A : gram_decompositions(M)) {
            CandidateMatrix cm;
            cm.xi = xi;
            cm.genDim2 = dxi;
            // exact squared column dimensions ((A^T d)_t)^2 / d(xi)
            int k = A.cols;
            std::vector<std::pair<QuadExt, std::vector<int32_t>>> cols(k);
            for (int c = 0; c < k; ++c) {
                QuadExt colSum(0);
                std::vector<int32_t> col(R.rank);
                for (int r = 0; r < R.rank; ++r) {
                    col[r] = A.at(r, c);
                    if (col[r]) colSum += QuadExt(col[r]) * R.fpDim[r];
                }
                cols[c] = {colSum * colSum / dxi, std::move(col)};
            }
            std::sort(cols.begin(), cols.end(),
                      [](const auto& x, const auto& y) {
                          if (x.first == y.first) return x.second < y.second;
                          return quad_less(x.first, y.first);
                      });
            cm.A = IntMat(R.rank, k);
            for (int c = 0; c < k; ++c) {
                cm.colDim2.push_back(cols[c].first);
                for (int r = 0; r < R.rank; ++r) cm.A.at(r, c) = cols[c].second[r];
            }
            for (int c = 0; c < k; ++c)
                if (cm.A.at(0, c) == 1) {
                    cm.genCol = c;
                    break;
                }
            if (cm.genCol < 0) throw number_error("candidate matrix lost its generator column");
            perEnd[e].push_back(std::move(cm));
        }
    });
    std::vector<CandidateMatrix> out;
    for (auto& v : perEnd)
        for (auto& cm : v) out.push_back(std::move(cm));
    return out;
}

// ---- commensurability classes for exact eigenvector checks ----------------

namespace {

struct SurdClasses {
    int fieldD = 0;
    std::vector<QuadExt> reps;
    // sqrt(v) = mult * sqrt(reps[cls])
    std::pair<int, QuadExt> classify(const QuadExt& v) {
        for (size_t c = 0; c < reps.size(); ++c)
            if (auto y = sqrt_in_field(v / reps[c], fieldD)) return {(int)c, *y};
        reps.push_back(v);
        return {(int)reps.size() - 1, QuadExt(1)};
    }
};

// The assembled module search for one dimension signature.
struct Assembler {
    const FusionRing& R;
    int n;
    const std::vector<QuadExt>& D;  // ascending squared dimensions
    int m;
    std::vector<std::pair<int, int>> blocks;           // [start, end) runs of equal dim2
    std::vector<int> blockOf;                          // slot -> block
    std::vector<std::vector<const CandidateMatrix*>> pool;  // per slot
    std::vector<std::vector<int32_t>> rows;            // filled row blocks, n*m each
    std::vector<std::pair<int, int>> nz;               // scratch
    std::vector<FusionModule> found;

    Assembler(const FusionRing& r, const std::vector<QuadExt>& d)
        : R(r), n(r.rank), D(d), m((int)d.size()) {
        for (int s = 0; s < m;) {
            int e = s;
            while (e < m && D[e] == D[s]) ++e;
            blocks.emplace_back(s, e);
            s = e;
        }
        blockOf.resize(m);
        for (size_t b = 0; b < blocks.size(); ++b)
            for (int s = blocks[b].first; s < blocks[b].second; ++s) blockOf[s] = (int)b;
        pool.resize(m);
    }

    int32_t row(int s, int i, int t) const { return rows[s][(size_t)i * m + t]; }

    bool consistent(int p) {
        // dual symmetry and the representation property restricted to the
        // filled slots; row t of act[i] equals row t of act[dual i] transposed,
        // which makes every check expressible in terms of filled rows.
        for (int q = 0; q <= p; ++q) {
            for (int i = 1; i < n; ++i)
                if (row(q, i, p) != row(p, R.dual[i], q)) return false;
        }
        for (int q = 0; q <= p; ++q) {
            for (int i = 1; i < n; ++i) {
                int di = R.dual[i];
                for (int j = 1; j < n; ++j) {
                    long long lhs = 0;
                    for (int k = 0; k < n; ++k) {
                        int c = R.n(i, j, k);
                        if (c) lhs += (long long)c * row(q, k, p);
                    }
                    long long rhs = 0;
                    for (int u = 0; u < m; ++u) rhs += (long long)row(q, j, u) * row(p, di, u);
                    if (lhs != rhs) return false;
                    if (q != p) {
                        long long lhs2 = 0;
                        for (int k = 0; k < n; ++k) {
                            int c = R.n(i, j, k);
                            if (c) lhs2 += (long long)c * row(p, k, q);
                        }
                        long long rhs2 = 0;
                        for (int u = 0; u < m; ++u) rhs2 += (long long)row(p, j, u) * row(q, di, u);
                        if (lhs2 != rhs2) return false;
                    }
                }
            }
        }
        return true;
    }

    bool indecomposable() const {
        std::vector<int> seen(m, 0), stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            for (int t = 0; t < m; ++t) {
                if (seen[t]) continue;
                bool adj = false;
                for (int i = 1; i < n && !adj; ++i)
                    if (row(s, i, t) || row(t, i, s)) adj = true;
                if (adj) {
                    seen[t] = 1;
                    ++count;
                    stack.push_back(t);
                }
            }
        }
        return count == m;
    }

    // exact FP eigenvector property: sum_t act[i][s][t] sqrt(D_t) = d_i sqrt(D_s)
    bool eigen_ok() const {
        SurdClasses classes;
        classes.fieldD = R.fieldD;
        std::vector<int> cls(m);
        std::vector<QuadExt> mult(m);
        for (int s = 0; s < m; ++s) std::tie(cls[s], mult[s]) = classes.classify(D[s]);
        int nc = (int)classes.reps.size();
        std::vector<QuadExt> acc(nc);
        for (int i = 1; i < n; ++i)
            for (int s = 0; s < m; ++s) {
                for (int c = 0; c < nc; ++c) acc[c] = QuadExt(0);
                for (int t = 0; t < m; ++t)
                    if (int32_t v = row(s, i, t)) acc[cls[t]] += QuadExt(v) * mult[t];
                for (int c = 0; c < nc; ++c) {
                    QuadExt want = (c == cls[s]) ? R.fpDim[i] * mult[s] : QuadExt(0);
                    if (acc[c] != want) return false;
                }
            }
        return true;
    }

    void emit() {
        FusionModule M;
        M.ring = &R;
        M.side = Side::Left;
        M.rank = m;
        M.dim2 = D;
        M.act.assign((size_t)n * m * m, 0);
        for (int i = 0; i < n; ++i)
            for (int s = 0; s < m; ++s)
                for (int t = 0; t < m; ++t) M.a(i, s, t) = row(s, i, t);
        found.push_back(canonical_module(M));
    }

    void fill(int s) {
        if (s == m) {
            if (indecomposable() && eigen_ok()) emit();
            return;
        }
        for (const CandidateMatrix* cm : pool[s]) {
            // column -> slot assignment: block-preserving, generator column -> s
            std::vector<int> perm(m, -1);
            std::vector<char> used(m, 0);
            perm[cm->genCol] = s;
            used[s] = 1;
            place_columns(*cm, perm, used, 0, s);
        }
    }

    void place_columns(const CandidateMatrix& cm, std::vector<int>& perm, std::vector<char>& used,
                       int c, int s) {
        if (c == m) {
            rows.emplace_back((size_t)n * m, 0);
            auto& B = rows.back();
            for (int i = 0; i < n; ++i)
                for (int col = 0; col < m; ++col) B[(size_t)i * m + perm[col]] = cm.A.at(i, col);
            if (consistent(s)) fill(s + 1);
            rows.pop_back();
            return;
        }
        if (perm[c] >= 0) {
            place_columns(cm, perm, used, c + 1, s);
            return;
        }
        auto [bs, be] = blocks[blockOf[c]];  // column c's dim block == slot block
        for (int t = bs; t < be; ++t) {
            if (used[t]) continue;
            perm[c] = t;
            used[t] = 1;
            place_columns(cm, perm, used, c + 1, s);
            perm[c] = -1;
            used[t] = 0;
        }
    }
};

}  // namespace

ModuleCatalog enumerate_fusion_modules(const FusionRing& R, Side side, int jobs) {
    std::vector<CandidateMatrix> cands = candidate_fusion_matrices(R, jobs);
    // group by dimension signature
    std::vector<std::vector<QuadExt>> signatures;
    std::vector<int> sigOf(cands.size());
    for (size_t i = 0; i < cands.size(); ++i) {
        int found = -1;
        for (size_t s = 0; s < signatures.size(); ++s)
            if (signatures[s] == cands[i].colDim2) {
                found = (int)s;
                break;
            }
        if (found < 0) {
            signatures.push_back(cands[i].colDim2);
            found = (int)signatures.size() - 1;
        }
        sigOf[i] = found;
    }
    // deterministic signature order
    std::vector<int> sigOrder(signatures.size());
    std::iota(sigOrder.begin(), sigOrder.end(), 0);
    std::sort(sigOrder.begin(), sigOrder.end(), [&](int a, int b) {
        return quad_vec_less(signatures[a], signatures[b]);
    });

    std::vector<std::vector<FusionModule>> perSig(signatures.size());
    parallel_for(jobs, sigOrder.size(), [&](size_t oi) {
        int sig = sigOrder[oi];
        const auto& D = signatures[sig];
        Assembler asmbl(R, D);
        bool feasible = true;
        for (int s = 0; s < asmbl.m && feasible; ++s) {
            for (size_t i = 0; i < cands.size(); ++i)
                if (sigOf[i] == sig && cands[i].genDim2 == D[s])
                    asmbl.pool[s].push_back(&cands[i]);
            if (asmbl.pool[s].empty()) feasible = false;
        }
        if (!feasible) return;
        asmbl.fill(0);
        // dedupe up to isomorphism inside the signature class
        std::sort(asmbl.found.begin(), asmbl.found.end(),
                  [](const FusionModule& a, const FusionModule& b) { return a.act < b.act; });
        asmbl.found.erase(std::unique(asmbl.found.begin(), asmbl.found.end(),
                                      [](const FusionModule& a, const FusionModule& b) {
                                          return a.act == b.act;
                                      }),
                          asmbl.found.end());
        perSig[sig] = std::move(asmbl.found);
    });

    ModuleCatalog cat;
    cat.ring = &R;
    cat.side = Side::Left;
    for (int sig : sigOrder)
        for (auto& M : perSig[sig]) cat.mods.push_back(std::move(M));
    std::sort(cat.mods.begin(), cat.mods.end(), module_less);
    if (side == Side::Right) {
        cat.side = Side::Right;
        for (auto& M : cat.mods) M = opposite_module(M);
    }
    return cat;
}

FusionModule opposite_module(const FusionModule& M) {
    FusionModule out = M;
    out.side = M.side == Side::Left ? Side::Right : Side::Left;
    for (int i = 0; i < M.ring->rank; ++i)
        for (int s = 0; s < M.rank; ++s)
            for (int t = 0; t < M.rank; ++t) out.a(i, s, t) = M.a(i, t, s);
    return out;
}

namespace {

// All dimension-preserving permutations (as slot maps old->new), streamed to f;
// stops early when f returns false.
void for_each_dim_perm(const std::vector<QuadExt>& dim2,
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

std::vector<int32_t> permuted_act(const FusionModule& M, const std::vector<int>& p) {
    std::vector<int32_t> out(M.act.size());
    int n = M.ring->rank, m = M.rank;
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < m; ++s)
            for (int t = 0; t < m; ++t)
                out[((size_t)i * m + p[s]) * m + p[t]] = M.a(i, s, t);
    return out;
}

}  // namespace

std::vector<int32_t> module_canonical_act(const FusionModule& M) {
    std::vector<int32_t> best = M.act;
    for_each_dim_perm(M.dim2, [&](const std::vector<int>& p) {
        auto cand = permuted_act(M, p);
        if (cand < best) best = std::move(cand);
        return true;
    });
    return best;
}

FusionModule canonical_module(const FusionModule& M) {
    FusionModule out = M;
    out.act = module_canonical_act(M);
    return out;
}

bool module_less(const FusionModule& A, const FusionModule& B) {
    if (A.rank != B.rank) return A.rank < B.rank;
    if (A.dim2 != B.dim2) return quad_vec_less(A.dim2, B.dim2);
    return A.act < B.act;
}

std::optional<std::vector<int>> module_iso(const FusionModule& M1, const FusionModule& M2) {
    if (M1.ring != M2.ring || M1.side != M2.side || M1.rank != M2.rank) return std::nullopt;
    if (M1.dim2 != M2.dim2) return std::nullopt;
    std::optional<std::vector<int>> hit;
    for_each_dim_perm(M1.dim2, [&](const std::vector<int>& p) {
        if (permuted_act(M1, p) == M2.act) {
            hit = p;
            return false;
        }
        return true;
    });
    return hit;
}

ValidationReport validate_module(const FusionModule& M) {
    auto bad = [&](const std::string& msg) {
        return ValidationReport{false, RingAxiom::Shape, msg};
    };
    const FusionRing& R = *M.ring;
    const int n = R.rank, m = M.rank;
    if (m <= 0 || M.act.size() != (size_t)n * m * m || (int)M.dim2.size() != m)
        return bad("module shape");
    for (int s = 0; s + 1 < m; ++s)
        if (quad_less(M.dim2[s + 1], M.dim2[s])) return bad("dim2 not ascending");
    for (int s = 0; s < m; ++s)
        for (int t = 0; t < m; ++t)
            if (M.a(0, s, t) != (s == t)) return bad("unit action");
    bool left = M.side == Side::Left;
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < m; ++s)
            for (int t = 0; t < m; ++t)
                if (M.a(i, s, t) < 0 || M.a(i, s, t) != M.a(R.dual[i], t, s))
                    return bad("dual symmetry at i=" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int s = 0; s < m; ++s)
                for (int t = 0; t < m; ++t) {
                    long long lhs = 0;
                    for (int k = 0; k < n; ++k)
                        if (int c = R.n(i, j, k)) lhs += (long long)c * M.a(k, s, t);
                    long long rhs = 0;
                    // left: act[j] act[i]; right: act[i] act[j]
                    for (int u = 0; u < m; ++u)
                        rhs += left ? (long long)M.a(j, s, u) * M.a(i, u, t)
                                    : (long long)M.a(i, s, u) * M.a(j, u, t);
                    if (lhs != rhs) return bad("representation property");
                }
    // indecomposability
    {
        std::vector<int> seen(m, 0), stack{0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            for (int t = 0; t < m; ++t)
                if (!seen[t]) {
                    bool adj = false;
                    for (int i = 1; i < n && !adj; ++i)
                        if (M.a(i, s, t) || M.a(i, t, s)) adj = true;
                    if (adj) {
                        seen[t] = 1;
                        ++cnt;
                        stack.push_back(t);
                    }
                }
        }
        if (cnt != m) return bad("decomposable");
    }
    // admissibility (a): dim2 equals the internal-end dimension and the
    // dimension vector is the exact FP eigenvector
    for (int s = 0; s < m; ++s) {
        QuadExt end(0);
        for (int i = 0; i < n; ++i)
            if (M.a(i, s, s)) end += QuadExt(M.a(i, s, s)) * R.fpDim[i];
        if (end != M.dim2[s]) return bad("internal end dimension mismatch at " + std::to_string(s));
    }
    {
        SurdClasses classes;
        classes.fieldD = R.fieldD;
        std::vector<int> cls(m);
        std::vector<QuadExt> mult(m);
        for (int s = 0; s < m; ++s) std::tie(cls[s], mult[s]) = classes.classify(M.dim2[s]);
        for (int i = 1; i < n; ++i)
            for (int s = 0; s < m; ++s) {
                std::vector<QuadExt> acc(classes.reps.size(), QuadExt(0));
                for (int t = 0; t < m; ++t)
                    if (int32_t v = M.a(i, s, t)) acc[cls[t]] += QuadExt(v) * mult[t];
                for (size_t c = 0; c < acc.size(); ++c) {
                    QuadExt want = ((int)c == cls[s]) ? R.fpDim[i] * mult[s] : QuadExt(0);
                    if (acc[c] != want) return bad("FP eigenvector fails");
                }
            }
    }
    // admissibility (b): A_s A_s^T = M^{xi_s}
    for (int s = 0; s < m; ++s) {
        IntMat Mx = internal_end_matrix(M.internal_end(s));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long long dot = 0;
                for (int t = 0; t < m; ++t) dot += (long long)M.a(i, s, t) * M.a(j, s, t);
                if (dot != Mx.at(i, j)) return bad("admissibility (b)");
            }
    }
    return ValidationReport{};
}

// ---- module file format ---------------------------------------------------

std::string render_module(const FusionModule& M, const std::string& ringName, int index) {
    std::ostringstream out;
    out << "%module " << ringName << " " << index << "\n";
    out << "%side " << (M.side == Side::Left ? "left" : "right") << "\n";
    out << "%rank " << M.rank << "\n%dim2 ";
    for (int s = 0; s < M.rank; ++s) out << (s ? "|" : "") << render_quadext(M.dim2[s]);
    out << "\n%action\n";
    for (int i = 0; i < M.ring->rank; ++i)
        for (int s = 0; s < M.rank; ++s) {
            for (int t = 0; t < M.rank; ++t) out << (t ? " " : "") << M.a(i, s, t);
            out << "\n";
        }
    out << "%end\n";
    return out.str();
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string f;
    while (in >> f) out.push_back(f);
    return out;
}

[[noreturn]] void mod_fail(size_t line, const std::string& what) {
    throw number_error("line " + std::to_string(line + 1) + ": " + what);
}

}  // namespace

FusionModule parse_module(const std::vector<std::string>& lines, size_t& cursor,
                          const FusionRing& ring) {
    auto need = [&](const char* tag) -> std::vector<std::string> {
        while (cursor < lines.size() &&
               (lines[cursor].empty() || lines[cursor][0] == '#'))
            ++cursor;
        if (cursor >= lines.size()) mod_fail(cursor, std::string("expected ") + tag);
        auto f = split_fields(lines[cursor]);
        if (f.empty() || f[0] != tag) mod_fail(cursor, std::string("expected ") + tag);
        ++cursor;
        return f;
    };
    FusionModule M;
    M.ring = &ring;
    auto head = need("%module");
    if (head.size() != 3 || head[1] != ring.name) mod_fail(cursor - 1, "%module header mismatch");
    auto sideF = need("%side");
    if (sideF.size() != 2 || (sideF[1] != "left" && sideF[1] != "right"))
        mod_fail(cursor - 1, "bad %side");
    M.side = sideF[1] == "left" ? Side::Left : Side::Right;
    M.rank = std::stoi(need("%rank").at(1));
    if (M.rank <= 0 || M.rank > 256) mod_fail(cursor - 1, "bad rank");
    auto dim2F = need("%dim2");
    {
        if (dim2F.size() != 2) mod_fail(cursor - 1, "bad %dim2");
        std::string cur;
        std::vector<std::string> toks;
        for (char c : dim2F[1])
            if (c == '|') {
                toks.push_back(cur);
                cur.clear();
            } else
                cur += c;
        toks.push_back(cur);
        if ((int)toks.size() != M.rank) mod_fail(cursor - 1, "wrong dim2 count");
        for (auto& t : toks) M.dim2.push_back(parse_quadext(t, ring.fieldD));
    }
    need("%action");
    M.act.assign((size_t)ring.rank * M.rank * M.rank, 0);
    for (int i = 0; i < ring.rank; ++i)
        for (int s = 0; s < M.rank; ++s) {
            if (cursor >= lines.size()) mod_fail(cursor, "truncated %action");
            auto f = split_fields(lines[cursor]);
            if ((int)f.size() != M.rank) mod_fail(cursor, "wrong %action row width");
            for (int t = 0; t < M.rank; ++t) M.a(i, s, t) = std::stoi(f[t]);
            ++cursor;
        }
    need("%end");
    ValidationReport rep = validate_module(M);
    if (!rep.ok) throw number_error("module file invalid: " + rep.message);
    return M;
}

std::string render_module_catalog(const ModuleCatalog& cat) {
    std::string out;
    for (size_t i = 0; i < cat.mods.size(); ++i)
        out += render_module(cat.mods[i], cat.ring->name, (int)i);
    return out;
}

ModuleCatalog parse_module_catalog(const std::string& text, const FusionRing& ring) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
    ModuleCatalog cat;
    cat.ring = &ring;
    size_t cursor = 0;
    while (true) {
        while (cursor < lines.size() && (lines[cursor].empty() || lines[cursor][0] == '#')) ++cursor;
        if (cursor >= lines.size()) break;
        cat.mods.push_back(parse_module(lines, cursor, ring));
    }
    if (!cat.mods.empty()) cat.side = cat.mods[0].side;
    return cat;
}

}  // namespace fusioncat
