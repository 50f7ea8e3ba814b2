#pragma once

// Exact arithmetic of finitely generated modules over Z and Z_ell
// (Smith normal form, direct sum, tensor, Tor_1) plus a closed symbolic
// algebra of group expressions for answers that are not finitely generated.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "motivic/core.hpp"

namespace motivic {

using bigint = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// RingTag: Z or Z_ell
// ---------------------------------------------------------------------------

struct RingTag {
    i64 ell = 0;  // 0 = Z, otherwise the prime of an ell-adic ring

    static RingTag Z() { return RingTag{0}; }
    static RingTag Zl(i64 ell) {
        if (!isPrime(ell)) throw std::invalid_argument("RingTag: ell must be prime");
        return RingTag{ell};
    }
    bool isAdic() const { return ell != 0; }
    bool operator==(const RingTag&) const = default;

    std::string str() const { return ell == 0 ? "Z" : "Z_" + std::to_string(ell); }
};

// ---------------------------------------------------------------------------
// FgModule: canonical invariant-factor form
// ---------------------------------------------------------------------------

struct OrderVal {
    bool infinite = false;
    i64 value = 1;  // meaningful when finite

    bool operator==(const OrderVal&) const = default;
};

class FgModule {
  public:
    RingTag ring;
    i64 freeRank = 0;
    std::vector<i64> torsion;  // d_1 | d_2 | ... , each > 1

    FgModule() : ring(RingTag::Z()) {}

    static FgModule zero(RingTag r = RingTag::Z()) { return FgModule(r, 0, {}); }
    static FgModule free(RingTag r, i64 rank) { return FgModule(r, rank, {}); }
    static FgModule cyclic(RingTag r, i64 m) { return FgModule(r, 0, {m}); }

    // Builds the canonical form from an arbitrary list of cyclic orders
    // (0 meaning a free summand).  Over Z_ell only the ell-part survives.
    FgModule(RingTag r, i64 rank, std::vector<i64> factors) : ring(r), freeRank(rank) {
        std::map<i64, std::vector<int>> expByPrime;  // prime -> exponents, one per factor
        for (i64 m : factors) {
            if (m < 0) m = -m;
            if (m == 0) { ++freeRank; continue; }
            if (ring.isAdic()) m = ellPart(m, ring.ell);
            if (m == 1) continue;
            i64 rest = m;
            std::map<i64, int> fac;
            for (i64 d = 2; d * d <= rest; ++d)
                while (rest % d == 0) { rest /= d; ++fac[d]; }
            if (rest > 1) ++fac[rest];
            for (auto& [p, e] : fac) expByPrime[p].push_back(e);
        }
        size_t slots = 0;
        for (auto& [p, es] : expByPrime) {
            std::sort(es.begin(), es.end(), std::greater<>());
            slots = std::max(slots, es.size());
        }
        // invariant factors, largest first: slot i takes each prime's i-th largest exponent
        std::vector<i64> inv(slots, 1);
        for (auto& [p, es] : expByPrime)
            for (size_t i = 0; i < es.size(); ++i) inv[i] *= ipow(p, es[i]);
        std::reverse(inv.begin(), inv.end());
        torsion = std::move(inv);
    }

    bool isZero() const { return freeRank == 0 && torsion.empty(); }
    bool isFree() const { return torsion.empty(); }

    bool operator==(const FgModule&) const = default;

    OrderVal order() const {
        if (freeRank > 0) return {true, 0};
        i64 n = 1;
        for (i64 d : torsion) n *= d;
        return {false, n};
    }

    std::string str() const {
        if (isZero()) return "0";
        std::ostringstream os;
        bool first = true;
        std::string base = ring.isAdic() ? "Z_" + std::to_string(ring.ell) : "Z";
        for (i64 i = 0; i < freeRank; ++i) {
            if (!first) os << " + ";
            os << base;
            first = false;
        }
        for (i64 d : torsion) {
            if (!first) os << " + ";
            os << "Z/" << d;
            first = false;
        }
        return os.str();
    }
};

inline FgModule directSum(const FgModule& a, const FgModule& b) {
    if (!(a.ring == b.ring)) throw std::invalid_argument("directSum: ring mismatch");
    std::vector<i64> factors = a.torsion;
    factors.insert(factors.end(), b.torsion.begin(), b.torsion.end());
    return FgModule(a.ring, a.freeRank + b.freeRank, std::move(factors));
}

// a (x) b; bilinear over direct sums, Z/m (x) Z/n = Z/gcd(m,n), free (x) M = M^rank
inline FgModule tensor(const FgModule& a, const FgModule& b) {
    if (!(a.ring == b.ring)) throw std::invalid_argument("tensor: ring mismatch");
    std::vector<i64> factors;
    for (i64 i = 0; i < a.freeRank; ++i)
        factors.insert(factors.end(), b.torsion.begin(), b.torsion.end());
    for (i64 i = 0; i < b.freeRank; ++i)
        factors.insert(factors.end(), a.torsion.begin(), a.torsion.end());
    for (i64 s : a.torsion)
        for (i64 t : b.torsion) factors.push_back(gcd_ll(s, t));
    return FgModule(a.ring, a.freeRank * b.freeRank, std::move(factors));
}

// Tor_1(a, b); vanishes when either argument is free
inline FgModule tor1(const FgModule& a, const FgModule& b) {
    if (!(a.ring == b.ring)) throw std::invalid_argument("tor1: ring mismatch");
    std::vector<i64> factors;
    for (i64 s : a.torsion)
        for (i64 t : b.torsion) factors.push_back(gcd_ll(s, t));
    return FgModule(a.ring, 0, std::move(factors));
}

inline OrderVal order(const FgModule& m) { return m.order(); }

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

using IntMat = std::vector<std::vector<bigint>>;

struct SnfResult {
    std::vector<bigint> diag;  // nonzero invariant factors d_1 | d_2 | ...
    IntMat left;               // unimodular
    IntMat right;              // unimodular
};

namespace detail {

inline IntMat identity(size_t n) {
    IntMat m(n, std::vector<bigint>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline void swapRows(IntMat& m, size_t i, size_t j) { std::swap(m[i], m[j]); }

inline void swapCols(IntMat& m, size_t i, size_t j) {
    for (auto& row : m) std::swap(row[i], row[j]);
}

// row[i] += c * row[j]
inline void addRow(IntMat& m, size_t i, size_t j, const bigint& c) {
    for (size_t k = 0; k < m[i].size(); ++k) m[i][k] += c * m[j][k];
}

inline void addCol(IntMat& m, size_t i, size_t j, const bigint& c) {
    for (auto& row : m) row[i] += c * row[j];
}

inline void negateRow(IntMat& m, size_t i) {
    for (auto& x : m[i]) x = -x;
}

}  // namespace detail

// Exact SNF with pivoting by minimal absolute value; returns left * mat * right
// diagonal with the divisibility chain.  Empty matrices are allowed.
inline SnfResult smithNormalForm(const IntMat& mat) {
    size_t rows = mat.size();
    size_t cols = rows ? mat[0].size() : 0;
    SnfResult res;
    res.left = detail::identity(rows);
    res.right = detail::identity(cols);
    if (rows == 0 || cols == 0) return res;
    IntMat a = mat;

    using boost::multiprecision::abs;
    size_t n = std::min(rows, cols);
    for (size_t s = 0; s < n; ++s) {
        // locate minimal nonzero |entry| in the lower-right block
        size_t pi = s, pj = s;
        bigint best = 0;
        for (size_t i = s; i < rows; ++i)
            for (size_t j = s; j < cols; ++j)
                if (a[i][j] != 0 && (best == 0 || abs(a[i][j]) < best)) {
                    best = abs(a[i][j]);
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;  // block is zero
        detail::swapRows(a, s, pi);
        detail::swapRows(res.left, s, pi);
        detail::swapCols(a, s, pj);
        detail::swapCols(res.right, s, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = s + 1; i < rows; ++i)
                if (a[i][s] != 0) {
                    bigint q = a[i][s] / a[s][s];
                    detail::addRow(a, i, s, -q);
                    detail::addRow(res.left, i, s, -q);
                    if (a[i][s] != 0) {  // remainder became the smaller pivot
                        detail::swapRows(a, s, i);
                        detail::swapRows(res.left, s, i);
                        clean = false;
                    }
                }
            for (size_t j = s + 1; j < cols; ++j)
                if (a[s][j] != 0) {
                    bigint q = a[s][j] / a[s][s];
                    detail::addCol(a, j, s, -q);
                    detail::addCol(res.right, j, s, -q);
                    if (a[s][j] != 0) {
                        detail::swapCols(a, s, j);
                        detail::swapCols(res.right, s, j);
                        clean = false;
                    }
                }
            if (!clean) continue;
            // force divisibility: pivot must divide the rest of the block
            for (size_t i = s + 1; i < rows && clean; ++i)
                for (size_t j = s + 1; j < cols && clean; ++j)
                    if (a[i][j] % a[s][s] != 0) {
                        detail::addRow(a, s, i, 1);
                        detail::addRow(res.left, s, i, 1);
                        clean = false;
                    }
        }
        if (a[s][s] < 0) {
            detail::negateRow(a, s);
            detail::negateRow(res.left, s);
        }
    }
    for (size_t s = 0; s < n; ++s)
        if (a[s][s] != 0) res.diag.push_back(a[s][s]);
    return res;
}

// ---------------------------------------------------------------------------
// Presentation -> canonical form
// ---------------------------------------------------------------------------

struct Presentation {
    RingTag ring;
    i64 generators = 0;
    std::vector<std::vector<i64>> relations;  // rows = relations
};

inline FgModule canonicalForm(const Presentation& p) {
    IntMat m(p.relations.size(), std::vector<bigint>(p.generators, 0));
    for (size_t i = 0; i < p.relations.size(); ++i) {
        if ((i64)p.relations[i].size() != p.generators)
            throw std::invalid_argument("canonicalForm: relation width mismatch");
        for (i64 j = 0; j < p.generators; ++j) m[i][j] = p.relations[i][j];
    }
    SnfResult snf = smithNormalForm(m);
    std::vector<i64> factors;
    for (const bigint& d : snf.diag) {
        if (d > std::numeric_limits<i64>::max())
            throw std::overflow_error("canonicalForm: invariant factor exceeds 64 bits");
        factors.push_back((i64)d);
    }
    i64 rank = p.generators - (i64)snf.diag.size();
    return FgModule(p.ring, rank, std::move(factors));
}

// ---------------------------------------------------------------------------
// GroupExpr: formal finite direct sums of atoms
// ---------------------------------------------------------------------------

enum class AtomKind { FG, KM, TOR4K2, QVEC, OPAQUE };

struct GroupExprAtom {
    AtomKind kind = AtomKind::FG;
    FgModule fg;          // FG
    int kmDegree = 0;     // KM
    i64 kmMod = 0;        // KM; 0 = integral
    bool kmBound = true;  // KM refers to the ambient field k
    i64 qvecRank = 0;     // QVEC
    std::string note;     // OPAQUE

    static GroupExprAtom FG_(FgModule m) {
        GroupExprAtom a;
        a.kind = AtomKind::FG;
        a.fg = std::move(m);
        return a;
    }
    static GroupExprAtom KM_(int degree, i64 mod, bool bound = true) {
        if (degree < 0 || mod < 0) throw std::invalid_argument("KM atom: bad parameters");
        GroupExprAtom a;
        a.kind = AtomKind::KM;
        a.kmDegree = degree;
        a.kmMod = mod;
        a.kmBound = bound;
        return a;
    }
    static GroupExprAtom Tor4K2_() {
        GroupExprAtom a;
        a.kind = AtomKind::TOR4K2;
        return a;
    }
    static GroupExprAtom QVec_(i64 rank) {
        if (rank < 0) throw std::invalid_argument("QVEC atom: negative rank");
        GroupExprAtom a;
        a.kind = AtomKind::QVEC;
        a.qvecRank = rank;
        return a;
    }
    static GroupExprAtom Opaque_(std::string note) {
        GroupExprAtom a;
        a.kind = AtomKind::OPAQUE;
        a.note = std::move(note);
        return a;
    }

    bool isZero() const {
        switch (kind) {
            case AtomKind::FG: return fg.isZero();
            case AtomKind::QVEC: return qvecRank == 0;
            default: return false;
        }
    }

    bool operator==(const GroupExprAtom&) const = default;
};

struct GroupExprSummand {
    GroupExprAtom atom;
    std::string label;  // generator name, e.g. "nu", "eta_s"

    bool operator==(const GroupExprSummand&) const = default;
};

class GroupExpr {
  public:
    std::vector<GroupExprSummand> summands;  // zero group = empty list

    GroupExpr() = default;

    static GroupExpr zero() { return GroupExpr(); }
    static GroupExpr of(GroupExprAtom a, std::string label = "") {
        GroupExpr e;
        if (!a.isZero()) e.summands.push_back({std::move(a), std::move(label)});
        return e;
    }
    static GroupExpr fg(FgModule m, std::string label = "") {
        return of(GroupExprAtom::FG_(std::move(m)), std::move(label));
    }

    bool isZero() const { return summands.empty(); }

    // true when every atom is a concrete FG module
    bool isExplicit() const {
        for (auto& s : summands)
            if (s.atom.kind != AtomKind::FG) return false;
        return true;
    }

    GroupExpr& add(GroupExprAtom a, std::string label = "") {
        if (!a.isZero()) summands.push_back({std::move(a), std::move(label)});
        return *this;
    }
    GroupExpr& append(const GroupExpr& e) {
        for (auto& s : e.summands) summands.push_back(s);
        return *this;
    }

    // Canonical comparison form: all FG atoms of one ring merged into a single
    // canonical module, remaining atoms sorted, labels discarded.
    GroupExpr canonical() const {
        std::map<i64, FgModule> fgByRing;
        std::vector<GroupExprAtom> rest;
        for (auto& s : summands) {
            if (s.atom.isZero()) continue;
            if (s.atom.kind == AtomKind::FG) {
                auto it = fgByRing.find(s.atom.fg.ring.ell);
                if (it == fgByRing.end())
                    fgByRing.emplace(s.atom.fg.ring.ell, s.atom.fg);
                else
                    it->second = directSum(it->second, s.atom.fg);
            } else {
                rest.push_back(s.atom);
            }
        }
        std::sort(rest.begin(), rest.end(), [](const GroupExprAtom& a, const GroupExprAtom& b) {
            auto key = [](const GroupExprAtom& x) {
                return std::tuple((int)x.kind, x.kmDegree, x.kmMod, x.qvecRank, x.note);
            };
            return key(a) < key(b);
        });
        GroupExpr out;
        for (auto& [ell, m] : fgByRing)
            if (!m.isZero()) out.summands.push_back({GroupExprAtom::FG_(m), ""});
        for (auto& a : rest) out.summands.push_back({a, ""});
        return out;
    }

    bool isoEqual(const GroupExpr& other) const {
        return canonical().summands == other.canonical().summands;
    }

    // Order of the group: finite value, INFINITE, or nullopt when symbolic
    // atoms make it undetermined.
    std::optional<OrderVal> orderIfKnown() const {
        i64 n = 1;
        for (auto& s : summands) {
            switch (s.atom.kind) {
                case AtomKind::FG: {
                    OrderVal o = s.atom.fg.order();
                    if (o.infinite) return OrderVal{true, 0};
                    n *= o.value;
                    break;
                }
                case AtomKind::QVEC:
                    if (s.atom.qvecRank > 0) return OrderVal{true, 0};
                    break;
                default:
                    return std::nullopt;
            }
        }
        return OrderVal{false, n};
    }
};

inline GroupExpr directSum(const GroupExpr& a, const GroupExpr& b) {
    GroupExpr out = a;
    out.append(b);
    return out;
}

// ---------------------------------------------------------------------------
// Symbolic tensor/Tor against a cyclic group Z/m
// ---------------------------------------------------------------------------

// e (x) Z/m, atom-wise.  Unresolvable atoms degrade to OPAQUE with a note.
inline GroupExpr exprTensorCyclic(const GroupExpr& e, i64 m) {
    if (m < 2) throw std::invalid_argument("exprTensorCyclic: modulus must be >= 2");
    GroupExpr out;
    for (auto& s : e.summands) {
        const GroupExprAtom& a = s.atom;
        switch (a.kind) {
            case AtomKind::FG:
                out.add(GroupExprAtom::FG_(tensor(a.fg, FgModule::cyclic(a.fg.ring, m))), s.label);
                break;
            case AtomKind::KM:
                if (a.kmMod == 0)
                    out.add(GroupExprAtom::KM_(a.kmDegree, m, a.kmBound), s.label);
                else if (a.kmMod % m == 0 || m % a.kmMod == 0)
                    out.add(GroupExprAtom::KM_(a.kmDegree, gcd_ll(m, a.kmMod), a.kmBound), s.label);
                else
                    out.add(GroupExprAtom::Opaque_("K^M_" + std::to_string(a.kmDegree) + "(k)/" +
                                                   std::to_string(a.kmMod) + " (x) Z/" +
                                                   std::to_string(m)),
                            s.label);
                break;
            case AtomKind::QVEC:
                break;  // divisible, dies mod m
            case AtomKind::TOR4K2:
                out.add(GroupExprAtom::Opaque_("Tor(Z/4,K^M_2(k)) (x) Z/" + std::to_string(m)),
                        s.label);
                break;
            case AtomKind::OPAQUE:
                out.add(GroupExprAtom::Opaque_(a.note + " (x) Z/" + std::to_string(m)), s.label);
                break;
        }
    }
    return out;
}

// Tor(Z/m, e), atom-wise.
inline GroupExpr exprTorCyclic(const GroupExpr& e, i64 m) {
    if (m < 2) throw std::invalid_argument("exprTorCyclic: modulus must be >= 2");
    GroupExpr out;
    for (auto& s : e.summands) {
        const GroupExprAtom& a = s.atom;
        switch (a.kind) {
            case AtomKind::FG:
                out.add(GroupExprAtom::FG_(tor1(FgModule::cyclic(a.fg.ring, m), a.fg)), s.label);
                break;
            case AtomKind::KM:
                if (m == 4 && a.kmDegree == 2 && a.kmMod == 0)
                    out.add(GroupExprAtom::Tor4K2_(), s.label);
                else
                    out.add(GroupExprAtom::Opaque_("Tor(Z/" + std::to_string(m) + ",K^M_" +
                                                   std::to_string(a.kmDegree) + "(k)" +
                                                   (a.kmMod ? "/" + std::to_string(a.kmMod) : "") +
                                                   ")"),
                            s.label);
                break;
            case AtomKind::QVEC:
                break;  // torsion-free
            case AtomKind::TOR4K2:
                out.add(GroupExprAtom::Opaque_("Tor(Z/" + std::to_string(m) +
                                               ",Tor(Z/4,K^M_2(k)))"),
                        s.label);
                break;
            case AtomKind::OPAQUE:
                out.add(GroupExprAtom::Opaque_("Tor(Z/" + std::to_string(m) + "," + a.note + ")"),
                        s.label);
                break;
        }
    }
    return out;
}

}  // namespace motivic
