#include "fusioncat/fusion_ring.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fusioncat {

bool FusionRing::commutative() const {
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < i; ++j)
            for (int k = 0; k < rank; ++k)
                if (n(i, j, k) != n(j, i, k)) return false;
    return true;
}

std::vector<int> FusionRing::invertibles() const {
    std::vector<int> out;
    for (int i = 0; i < rank; ++i)
        if (fpDim[i] == QuadExt(1)) out.push_back(i);
    return out;
}

int FusionRing::basis_index(const std::string& label) const {
    for (int i = 0; i < rank; ++i)
        if (basisNames[i] == label) return i;
    throw number_error("no basis element named '" + label + "' in ring " + name);
}

RingElement RingElement::basis(const FusionRing& r, int i) {
    RingElement e(r);
    e.coeffs[i] = 1;
    return e;
}

const char* ring_axiom_name(RingAxiom a) {
    switch (a) {
        case RingAxiom::Shape: return "shape";
        case RingAxiom::UnitLeft: return "unit-left";
        case RingAxiom::UnitRight: return "unit-right";
        case RingAxiom::DualInvolution: return "dual-involution";
        case RingAxiom::DualUnit: return "dual-unit";
        case RingAxiom::Frobenius: return "frobenius";
        case RingAxiom::Associativity: return "associativity";
        case RingAxiom::DimHomomorphism: return "dim-homomorphism";
        case RingAxiom::DimPositive: return "dim-positive";
    }
    return "?";
}

namespace {
ValidationReport fail(RingAxiom a, const std::string& msg) {
    return ValidationReport{false, a, std::string(ring_axiom_name(a)) + ": " + msg};
}
std::string ijk(int i, int j, int k) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}
}  // namespace

ValidationReport validate_ring(const FusionRing& R) {
    const int n = R.rank;
    if (n <= 0 || (int)R.basisNames.size() != n || (int)R.dual.size() != n ||
        R.N.size() != (size_t)n * n * n)
        return fail(RingAxiom::Shape, "inconsistent sizes");
    for (int v : R.N)
        if (v < 0) return fail(RingAxiom::Shape, "negative structure constant");
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (R.n(0, j, k) != (j == k ? 1 : 0))
                return fail(RingAxiom::UnitLeft, ijk(0, j, k));
            if (R.n(j, 0, k) != (j == k ? 1 : 0))
                return fail(RingAxiom::UnitRight, ijk(j, 0, k));
        }
    for (int i = 0; i < n; ++i) {
        if (R.dual[i] < 0 || R.dual[i] >= n || R.dual[R.dual[i]] != i)
            return fail(RingAxiom::DualInvolution, "index " + std::to_string(i));
    }
    if (R.dual[0] != 0) return fail(RingAxiom::DualInvolution, "dual(0) != 0");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (R.n(i, j, 0) != (j == R.dual[i] ? 1 : 0))
                return fail(RingAxiom::DualUnit, ijk(i, j, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (R.n(i, j, k) != R.n(R.dual[i], k, j) || R.n(i, j, k) != R.n(k, R.dual[j], i))
                    return fail(RingAxiom::Frobenius, ijk(i, j, k));
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    long long lhs = 0, rhs = 0;
                    for (int m = 0; m < n; ++m) {
                        lhs += (long long)R.n(i, j, m) * R.n(m, k, l);
                        rhs += (long long)R.n(j, k, m) * R.n(i, m, l);
                    }
                    if (lhs != rhs)
                        return fail(RingAxiom::Associativity, ijk(i, j, k) + " l=" + std::to_string(l));
                }
    if (!R.fpDim.empty()) {
        if ((int)R.fpDim.size() != n) return fail(RingAxiom::Shape, "fpDim size");
        if (R.fpDim[0] != QuadExt(1)) return fail(RingAxiom::DimHomomorphism, "d(1) != 1");
        for (int i = 0; i < n; ++i)
            if (quad_sign(R.fpDim[i]) <= 0) return fail(RingAxiom::DimPositive, std::to_string(i));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                QuadExt s(0);
                for (int k = 0; k < n; ++k)
                    if (R.n(i, j, k)) s += QuadExt(R.n(i, j, k)) * R.fpDim[k];
                if (s != R.fpDim[i] * R.fpDim[j])
                    return fail(RingAxiom::DimHomomorphism, ijk(i, j, -1));
            }
    }
    return ValidationReport{};
}

std::vector<QuadExt> fp_dimensions(const FusionRing& R) {
    const int n = R.rank;
    // Power iteration on C = sum_i M_i (contains the identity block, so the
    // chain is aperiodic and converges to the Perron eigenvector).
    // The FP vector d satisfies sum_k N[i][j][k] d_k = d_i d_j; iterate
    // d <- C d with C[j][k] = sum_i N[i][j][k], normalizing d_0 = 1.
    std::vector<float128> C((size_t)n * n, 0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            float128 c = 0;
            for (int i = 0; i < n; ++i) c += (float128)R.n(i, j, k);
            C[(size_t)j * n + k] = c;
        }
    std::vector<float128> v(n, 1), w(n);
    for (int iter = 0; iter < 4000; ++iter) {
        for (int j = 0; j < n; ++j) {
            float128 acc = 0;
            for (int k = 0; k < n; ++k) acc += C[(size_t)j * n + k] * v[k];
            w[j] = acc;
        }
        float128 scale = w[0];
        float128 delta = 0;
        for (int j = 0; j < n; ++j) {
            w[j] /= scale;
            delta += fabsq(w[j] - v[j]);
        }
        v = w;
        if (delta < (float128)1e-33 && iter > 32) break;
    }
    const int maxDen = 64;
    std::vector<QuadExt> dims(n);
    float128 sqrtD = R.fieldD > 1 ? sqrtq((float128)R.fieldD) : (float128)1;
    for (int j = 0; j < n; ++j) {
        bool found = false;
        for (int q = 1; q <= maxDen && !found; ++q) {
            float128 xq = v[j] * q;
            long long rmax = R.fieldD > 1 ? (long long)(xq / sqrtD) + 2 : 0;
            for (long long r = -rmax; r <= rmax && !found; ++r) {
                float128 rest = xq - (float128)r * sqrtD;
                long long p = (long long)roundq(rest);
                if (fabsq(rest - (float128)p) < (float128)1e-18) {
                    QuadExt cand(Rational(p, q), Rational(r, q), R.fieldD > 1 ? R.fieldD : 0);
                    if (quad_sign(cand) > 0) {
                        dims[j] = cand;
                        found = true;
                    }
                }
            }
        }
        if (!found)
            throw number_error("fp_dimensions: entry " + std::to_string(j) +
                               " not recognized in Q(sqrt(" + std::to_string(R.fieldD) +
                               ")) with denominator <= 64");
    }
    // The numeric stage is not load-bearing: verify the homomorphism identity
    // exactly before accepting.
    FusionRing tmp = R;
    tmp.fpDim = dims;
    ValidationReport rep = validate_ring(tmp);
    if (!rep.ok) throw number_error("fp_dimensions verification failed: " + rep.message);
    return dims;
}

void attach_fp_dimensions(FusionRing& R) {
    R.fpDim = fp_dimensions(R);
    R.fpDim2.clear();
    for (const auto& d : R.fpDim) R.fpDim2.push_back(d * d);
}

RingElement elem_mul(const RingElement& x, const RingElement& y) {
    if (x.ring != y.ring) throw number_error("elem_mul: ring mismatch");
    const FusionRing& R = *x.ring;
    RingElement out(R);
    for (int i = 0; i < R.rank; ++i) {
        if (!x.coeffs[i]) continue;
        for (int j = 0; j < R.rank; ++j) {
            if (!y.coeffs[j]) continue;
            long long c = x.coeffs[i] * y.coeffs[j];
            for (int k = 0; k < R.rank; ++k) out.coeffs[k] += c * R.n(i, j, k);
        }
    }
    return out;
}

long long elem_inner(const RingElement& x, const RingElement& y) {
    if (x.ring != y.ring) throw number_error("elem_inner: ring mismatch");
    long long s = 0;
    for (size_t i = 0; i < x.coeffs.size(); ++i) s += x.coeffs[i] * y.coeffs[i];
    return s;
}

QuadExt elem_dim(const RingElement& x) {
    QuadExt s(0);
    for (int i = 0; i < x.ring->rank; ++i)
        if (x.coeffs[i]) s += QuadExt(x.coeffs[i]) * x.ring->fpDim[i];
    return s;
}

QuadExt global_dim2(const FusionRing& R) {
    QuadExt s(0);
    for (const auto& d2 : R.fpDim2) s += d2;
    return s;
}

std::vector<long long> right_mult_matrix(const RingElement& e) {
    const FusionRing& R = *e.ring;
    std::vector<long long> M((size_t)R.rank * R.rank, 0);
    for (int l = 0; l < R.rank; ++l) {
        if (!e.coeffs[l]) continue;
        for (int i = 0; i < R.rank; ++i)
            for (int j = 0; j < R.rank; ++j)
                M[(size_t)i * R.rank + j] += e.coeffs[l] * R.n(i, l, j);
    }
    return M;
}

// ---- ring file format --------------------------------------------------
//
// %ring <name>
// %field <D>
// %rank <n>
// %basis <n labels>
// %dual <n 0-based indices>
// %dim2 <n QuadExt tokens separated by |>
// %N
// <n blocks, each n lines of n integers; block i, line j, column k>
// %end

std::string render_ring(const FusionRing& R) {
    std::ostringstream out;
    out << "%ring " << R.name << "\n%field " << R.fieldD << "\n%rank " << R.rank << "\n%basis";
    for (const auto& b : R.basisNames) out << " " << b;
    out << "\n%dual";
    for (int d : R.dual) out << " " << d;
    out << "\n%dim2 ";
    for (int i = 0; i < R.rank; ++i) out << (i ? "|" : "") << render_quadext(R.fpDim2[i]);
    out << "\n%N\n";
    for (int i = 0; i < R.rank; ++i)
        for (int j = 0; j < R.rank; ++j) {
            for (int k = 0; k < R.rank; ++k) out << (k ? " " : "") << R.n(i, j, k);
            out << "\n";
        }
    out << "%end\n";
    return out.str();
}

namespace {

struct LineReader {
    std::istringstream in;
    int lineNo = 0;
    std::string current;

    explicit LineReader(const std::string& text) : in(text) {}

    bool next() {
        while (std::getline(in, current)) {
            ++lineNo;
            if (!current.empty() && current[0] == '#') continue;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw number_error("line " + std::to_string(lineNo) + ": " + what);
    }
    std::vector<std::string> fields() const {
        std::vector<std::string> out;
        std::istringstream ls(current);
        std::string f;
        while (ls >> f) out.push_back(f);
        return out;
    }
    void expect_tag(const std::string& tag) {
        if (!next()) throw number_error("unexpected end of input, wanted " + tag);
        auto f = fields();
        if (f.empty() || f[0] != tag) fail("expected " + tag);
    }
};

}  // namespace

FusionRing parse_ring(const std::string& text) {
    LineReader rd(text);
    FusionRing R;
    rd.expect_tag("%ring");
    {
        auto f = rd.fields();
        if (f.size() != 2) rd.fail("%ring takes one name");
        R.name = f[1];
    }
    rd.expect_tag("%field");
    R.fieldD = std::stoi(rd.fields().at(1));
    rd.expect_tag("%rank");
    R.rank = std::stoi(rd.fields().at(1));
    if (R.rank <= 0 || R.rank > 64) rd.fail("unreasonable rank");
    rd.expect_tag("%basis");
    {
        auto f = rd.fields();
        if ((int)f.size() != R.rank + 1) rd.fail("wrong basis label count");
        R.basisNames.assign(f.begin() + 1, f.end());
    }
    rd.expect_tag("%dual");
    {
        auto f = rd.fields();
        if ((int)f.size() != R.rank + 1) rd.fail("wrong dual count");
        for (int i = 1; i <= R.rank; ++i) R.dual.push_back(std::stoi(f[i]));
    }
    rd.expect_tag("%dim2");
    {
        auto f = rd.fields();
        if (f.size() != 2) rd.fail("%dim2 takes one |-separated list");
        std::vector<std::string> toks;
        std::string cur;
        for (char c : f[1]) {
            if (c == '|') {
                toks.push_back(cur);
                cur.clear();
            } else
                cur += c;
        }
        toks.push_back(cur);
        if ((int)toks.size() != R.rank) rd.fail("wrong dim2 count");
        int col = 0;
        for (const auto& t : toks) {
            try {
                R.fpDim2.push_back(parse_quadext(t, R.fieldD));
            } catch (const number_error& e) {
                rd.fail("dim2 token " + std::to_string(col) + ": " + e.what());
            }
            ++col;
        }
    }
    rd.expect_tag("%N");
    R.N.assign((size_t)R.rank * R.rank * R.rank, 0);
    for (int i = 0; i < R.rank; ++i)
        for (int j = 0; j < R.rank; ++j) {
            if (!rd.next()) rd.fail("truncated %N block");
            auto f = rd.fields();
            if ((int)f.size() != R.rank) rd.fail("wrong row width in %N");
            for (int k = 0; k < R.rank; ++k) R.n(i, j, k) = std::stoi(f[k]);
        }
    rd.expect_tag("%end");
    // dim2 holds squares; recover the dimensions exactly
    for (const auto& s : R.fpDim2) {
        auto d = sqrt_in_field(s, R.fieldD);
        if (!d) throw number_error("dim2 entry is not a square in the field");
        R.fpDim.push_back(*d);
    }
    ValidationReport rep = validate_ring(R);
    if (!rep.ok) throw number_error("ring file invalid: " + rep.message);
    return R;
}

}  // namespace fusioncat
