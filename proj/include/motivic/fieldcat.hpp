#pragma once

// Field descriptors for the supported field classes: exponential
// characteristic, cohomological-dimension checks, Milnor K-theory, and the
// ell-adic / mod-ell motivic cohomology groups consumed by chart assembly.

#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "motivic/abgrp.hpp"
#include "motivic/core.hpp"

namespace motivic {

enum class FieldKind {
    AlgClosed,
    Finite,
    LocalPosChar,
    LocalCharZero,
    NumberFieldNonreal,
    FunctionFieldOverFinite,
};

struct FieldDescriptor {
    FieldKind kind = FieldKind::Finite;
    i64 q = 0;       // finite / residue field order
    i64 p = 1;       // exponential characteristic (1 in char 0)
    i64 ell0 = 0;    // LocalCharZero: residue characteristic
    i64 d = 0;       // LocalCharZero: degree over Q_ell0
    i64 a = 0;       // LocalCharZero: mu_{ell0^infty}(k) = mu_{ell0^a}
    i64 nRoots = 0;  // local fields: number of roots of unity in k
    i64 r2 = 0;      // NumberFieldNonreal: pairs of complex places

    static FieldDescriptor algClosed(i64 charac) {
        FieldDescriptor f;
        f.kind = FieldKind::AlgClosed;
        f.p = charac == 0 ? 1 : charac;
        if (f.p != 1 && !isPrime(f.p)) throw std::invalid_argument("algclosed: p must be 0 or prime");
        return f;
    }
    static FieldDescriptor finite(i64 q) {
        FieldDescriptor f;
        f.kind = FieldKind::Finite;
        f.q = q;
        int deg;
        if (!primePower(q, f.p, deg)) throw std::invalid_argument("finite field: q must be a prime power");
        return f;
    }
    static FieldDescriptor localPosChar(i64 q) {
        FieldDescriptor f;
        f.kind = FieldKind::LocalPosChar;
        f.q = q;
        int deg;
        if (!primePower(q, f.p, deg)) throw std::invalid_argument("localpos: q must be a prime power");
        f.nRoots = q - 1;  // mu(k) is the Teichmueller part
        return f;
    }
    static FieldDescriptor localCharZero(i64 ell0, i64 q, i64 d, i64 a, i64 n) {
        FieldDescriptor f;
        f.kind = FieldKind::LocalCharZero;
        f.p = 1;
        f.ell0 = ell0;
        f.q = q;
        f.d = d;
        f.a = a;
        f.nRoots = n;
        if (!isPrime(ell0)) throw std::invalid_argument("local: l0 must be prime");
        int deg;
        i64 rp;
        if (!primePower(q, rp, deg) || rp != ell0)
            throw std::invalid_argument("local: q must be a power of l0");
        if (d < 1 || a < 0) throw std::invalid_argument("local: need d >= 1 and a >= 0");
        if (n % (q - 1) != 0 || n % ipow(ell0, (int)a) != 0)
            throw std::invalid_argument("local: n must be divisible by q-1 and by l0^a");
        return f;
    }
    static FieldDescriptor numberFieldNonreal(i64 r2) {
        FieldDescriptor f;
        f.kind = FieldKind::NumberFieldNonreal;
        f.p = 1;
        f.r2 = r2;
        if (r2 < 0) throw std::invalid_argument("numberfield: r2 must be >= 0");
        return f;
    }
    static FieldDescriptor functionFieldOverFinite(i64 q) {
        FieldDescriptor f;
        f.kind = FieldKind::FunctionFieldOverFinite;
        f.q = q;
        int deg;
        if (!primePower(q, f.p, deg)) throw std::invalid_argument("funcfield: q must be a prime power");
        return f;
    }

    std::string str() const {
        std::ostringstream os;
        switch (kind) {
            case FieldKind::AlgClosed: os << "algclosed:p=" << (p == 1 ? 0 : p); break;
            case FieldKind::Finite: os << "Fq=" << q; break;
            case FieldKind::LocalPosChar: os << "localpos:q=" << q; break;
            case FieldKind::LocalCharZero:
                os << "local:l0=" << ell0 << ",q=" << q << ",d=" << d << ",a=" << a << ",n=" << nRoots;
                break;
            case FieldKind::NumberFieldNonreal: os << "numberfield:r2=" << r2; break;
            case FieldKind::FunctionFieldOverFinite: os << "funcfield:q=" << q; break;
        }
        return os.str();
    }
};

// Compact CLI grammar: Fq=9 | algclosed:p=0 | local:l0=5,q=5,d=1,a=0,n=4 |
// localpos:q=25 | numberfield:r2=1 | funcfield:q=4
FieldDescriptor parseField(const std::string& s);

namespace detail {
inline std::map<std::string, i64> parseKeyVals(const std::string& body, size_t offset) {
    std::map<std::string, i64> kv;
    size_t pos = 0;
    while (pos < body.size()) {
        size_t eq = body.find('=', pos);
        if (eq == std::string::npos) throw ParseError("expected key=value", offset + pos);
        std::string key = body.substr(pos, eq - pos);
        size_t comma = body.find(',', eq);
        std::string val = body.substr(eq + 1, comma == std::string::npos ? std::string::npos
                                                                         : comma - eq - 1);
        try {
            kv[key] = std::stoll(val);
        } catch (...) {
            throw ParseError("bad integer '" + val + "'", offset + eq + 1);
        }
        pos = comma == std::string::npos ? body.size() : comma + 1;
    }
    return kv;
}
}  // namespace detail

inline FieldDescriptor parseField(const std::string& s) {
    try {
        if (s.rfind("Fq=", 0) == 0) return FieldDescriptor::finite(std::stoll(s.substr(3)));
        size_t colon = s.find(':');
        std::string head = colon == std::string::npos ? s : s.substr(0, colon);
        std::string body = colon == std::string::npos ? "" : s.substr(colon + 1);
        auto kv = detail::parseKeyVals(body, colon + 1);
        auto need = [&](const std::string& k) {
            auto it = kv.find(k);
            if (it == kv.end()) throw ParseError("missing key '" + k + "'", s.size());
            return it->second;
        };
        if (head == "algclosed") return FieldDescriptor::algClosed(need("p"));
        if (head == "local")
            return FieldDescriptor::localCharZero(need("l0"), need("q"), need("d"), need("a"),
                                                  need("n"));
        if (head == "localpos") return FieldDescriptor::localPosChar(need("q"));
        if (head == "numberfield") return FieldDescriptor::numberFieldNonreal(need("r2"));
        if (head == "funcfield") return FieldDescriptor::functionFieldOverFinite(need("q"));
        throw ParseError("unknown field class '" + head + "'", 0);
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 0);
    } catch (const std::exception&) {
        throw ParseError("unparseable field descriptor '" + s + "'", 0);
    }
}

// ---------------------------------------------------------------------------
// Basic invariants
// ---------------------------------------------------------------------------

inline i64 expChar(const FieldDescriptor& f) { return f.p; }

enum class CdStatus { LowDim, NotLowDim, EqualsChar };

inline CdStatus cdCheck(const FieldDescriptor& f, i64 ell) {
    if (!isPrime(ell)) throw std::invalid_argument("cdCheck: ell must be prime");
    if (ell == f.p) return CdStatus::EqualsChar;
    return CdStatus::LowDim;  // every built-in class has cd <= 2
}

inline int cohomologicalDimension(const FieldDescriptor& f) {
    switch (f.kind) {
        case FieldKind::AlgClosed: return 0;
        case FieldKind::Finite: return 1;
        default: return 2;
    }
}

// ---------------------------------------------------------------------------
// Milnor K-theory
// ---------------------------------------------------------------------------

// K^M_i(k)/m; m = 0 means the integral group when representable, OPAQUE
// otherwise.  Never returns a wrong group: unsupported combinations are
// OPAQUE atoms carrying a note.
inline GroupExpr milnorK(const FieldDescriptor& f, int i, i64 m) {
    if (i < 0 || m < 0) throw std::invalid_argument("milnorK: need i >= 0, m >= 0");
    auto Z = RingTag::Z();
    if (i == 0) {
        if (m == 0) return GroupExpr::fg(FgModule::free(Z, 1));
        return m == 1 ? GroupExpr::zero() : GroupExpr::fg(FgModule::cyclic(Z, m));
    }
    if (m == 1) return GroupExpr::zero();
    // mod-m vanishing above the cohomological dimension holds for every
    // built-in class (all are low-dimensional, nonreal)
    if (i >= 3 && m >= 2) return GroupExpr::zero();

    switch (f.kind) {
        case FieldKind::AlgClosed:
            // units are divisible, so is K^M_i for i >= 1
            if (m >= 2) return GroupExpr::zero();
            return GroupExpr::of(GroupExprAtom::Opaque_("K^M_" + std::to_string(i) +
                                                        " of an algebraically closed field "
                                                        "(divisible, not finitely generated)"));
        case FieldKind::Finite:
            if (i == 1) {
                if (m == 0) return GroupExpr::fg(FgModule::cyclic(Z, f.q - 1));
                i64 g = gcd_ll(f.q - 1, m);
                return g == 1 ? GroupExpr::zero() : GroupExpr::fg(FgModule::cyclic(Z, g));
            }
            return GroupExpr::zero();  // K^M_{>=2}(F_q) = 0
        case FieldKind::LocalPosChar: {
            if (m == 0)
                return GroupExpr::of(GroupExprAtom::Opaque_(
                    "K^M_" + std::to_string(i) + " of a positive-characteristic local field "
                    "(contains (Z_p)^N, not finitely generated)"));
            if (m % f.p == 0)
                return GroupExpr::of(GroupExprAtom::Opaque_(
                    "K^M_" + std::to_string(i) + "(k)/" + std::to_string(m) +
                    " with p | m over a local field of characteristic p"));
            if (i == 1) {
                // k^x = Z + Z/(q-1) + (Z_p)^N; mod m with p coprime to m
                GroupExpr e = GroupExpr::fg(FgModule::cyclic(Z, m));
                i64 g = gcd_ll(f.q - 1, m);
                if (g > 1) e.add(GroupExprAtom::FG_(FgModule::cyclic(Z, g)));
                return e;
            }
            // i == 2: Hilbert-symbol quotient, Z/gcd(n, m) with n = #mu(k)
            i64 g = gcd_ll(f.nRoots, m);
            return g == 1 ? GroupExpr::zero() : GroupExpr::fg(FgModule::cyclic(Z, g));
        }
        case FieldKind::LocalCharZero: {
            if (i == 1) {
                if (m == 0) {
                    // Z + Z/(q-1) + Z/l0^a + (Z_l0)^d
                    GroupExpr e = GroupExpr::fg(FgModule::free(Z, 1));
                    if (f.q - 1 > 1) e.add(GroupExprAtom::FG_(FgModule::cyclic(Z, f.q - 1)));
                    if (f.a > 0)
                        e.add(GroupExprAtom::FG_(FgModule::cyclic(Z, ipow(f.ell0, (int)f.a))));
                    if (f.d > 0)
                        e.add(GroupExprAtom::FG_(FgModule::free(RingTag::Zl(f.ell0), f.d)));
                    return e;
                }
                GroupExpr e = GroupExpr::fg(FgModule::cyclic(Z, m));
                i64 g = gcd_ll(f.q - 1, m);
                if (g > 1) e.add(GroupExprAtom::FG_(FgModule::cyclic(Z, g)));
                i64 ga = gcd_ll(ipow(f.ell0, (int)f.a), m);
                if (ga > 1) e.add(GroupExprAtom::FG_(FgModule::cyclic(Z, ga)));
                i64 gl = ellPart(m, f.ell0);  // Z_l0/m = Z/l0^{v_l0(m)}
                if (gl > 1)
                    for (i64 j = 0; j < f.d; ++j)
                        e.add(GroupExprAtom::FG_(FgModule::cyclic(Z, gl)));
                return e;
            }
            // i == 2
            if (m == 0)
                return GroupExpr::of(GroupExprAtom::Opaque_(
                    "K^M_2 of a local field (uniquely divisible kernel + mu_n)"));
            i64 g = gcd_ll(f.nRoots, m);
            return g == 1 ? GroupExpr::zero() : GroupExpr::fg(FgModule::cyclic(Z, g));
        }
        case FieldKind::NumberFieldNonreal:
            return GroupExpr::of(GroupExprAtom::KM_(i, m));
        case FieldKind::FunctionFieldOverFinite:
            if (m % f.p == 0)
                return GroupExpr::of(GroupExprAtom::Opaque_(
                    "K^M_" + std::to_string(i) + "(k)/" + std::to_string(m) +
                    " with p | m over F_q(T)"));
            if (i == 1) return GroupExpr::of(GroupExprAtom::KM_(1, m));
            // i == 2: places sum, symbolic (answer layer only)
            return GroupExpr::of(GroupExprAtom::Opaque_(
                "(+)_p (F[T]/p)^x" + std::string(m ? " (x) Z/" + std::to_string(m) : "")));
    }
    return GroupExpr::of(GroupExprAtom::Opaque_("milnorK: unsupported combination"));
}

// ---------------------------------------------------------------------------
// Motivic cohomology of M Z_ell  (pi_{m+n alpha} M Z_ell = H^{-m-n}(k; Z_ell(-n)))
// ---------------------------------------------------------------------------

// User-supplied override/extension, keyed by "ell,m,n".
struct CohomTable {
    std::map<std::string, GroupExpr> entries;

    static std::string key(i64 ell, int m, int n) {
        return std::to_string(ell) + "," + std::to_string(m) + "," + std::to_string(n);
    }
    std::optional<GroupExpr> lookup(i64 ell, int m, int n) const {
        auto it = entries.find(key(ell, m, n));
        if (it == entries.end()) return std::nullopt;
        return it->second;
    }
};

// Returns nullopt when the group is genuinely unknown to the built-in tables
// (never fabricates Galois cohomology the formulas do not pin down).
inline std::optional<GroupExpr> motCohomZl(const FieldDescriptor& f, int m, int n, i64 ell,
                                           const CohomTable* override_ = nullptr) {
    if (ell == f.p)
        throw UnsupportedError("motCohomZl: ell = exponential characteristic violates the "
                               "ell-low-dimensionality hypothesis");
    if (!isPrime(ell)) throw std::invalid_argument("motCohomZl: ell must be prime");

    int j = -m - n;      // cohomological degree
    int twist = -n;      // Tate twist
    int cd = cohomologicalDimension(f);
    if (m < 0 || j < 0 || j > cd) return GroupExpr::zero();

    if (override_) {
        auto o = override_->lookup(ell, m, n);
        if (o) return o;
    }

    auto Zl = RingTag::Zl(ell);
    switch (f.kind) {
        case FieldKind::AlgClosed:
            // cd = 0, so j = 0 here; trivial Galois action on all twists
            return GroupExpr::fg(FgModule::free(Zl, 1));
        case FieldKind::Finite:
            if (j == 0) {
                if (twist == 0) return GroupExpr::fg(FgModule::free(Zl, 1));
                return GroupExpr::zero();  // finite mu, trivial Tate module
            }
            // j == 1, twist >= 1: H^1(F_q; Z_ell(t)) = Z_ell/(q^t - 1)
            {
                i64 part = ellPart(ipow(f.q, twist) - 1, ell);
                return part == 1 ? GroupExpr::zero()
                                 : GroupExpr::fg(FgModule::cyclic(Zl, part));
            }
        case FieldKind::LocalPosChar:
        case FieldKind::LocalCharZero: {
            if (j == 0) {
                if (twist == 0) return GroupExpr::fg(FgModule::free(Zl, 1));
                return GroupExpr::zero();  // finite mu
            }
            if (j == 1 && twist == 1) {
                // ell-completed units
                GroupExpr e = GroupExpr::fg(FgModule::free(Zl, 1));
                i64 part = ellPart(f.q - 1, ell);
                if (part > 1) e.add(GroupExprAtom::FG_(FgModule::cyclic(Zl, part)));
                if (f.kind == FieldKind::LocalCharZero) {
                    i64 pa = ellPart(ipow(f.ell0, (int)f.a), ell);
                    if (pa > 1) e.add(GroupExprAtom::FG_(FgModule::cyclic(Zl, pa)));
                    if (ell == f.ell0 && f.d > 0)
                        e.add(GroupExprAtom::FG_(FgModule::free(Zl, f.d)));
                }
                return e;
            }
            if (j == 2 && twist == 2) {
                // lim K_2(k)/ell^r via the Hilbert symbol: Z/ell^{v_ell(n)}
                i64 part = ellPart(f.nRoots, ell);
                return part == 1 ? GroupExpr::zero()
                                 : GroupExpr::fg(FgModule::cyclic(Zl, part));
            }
            return std::nullopt;  // not pinned down by the built-in formulas
        }
        case FieldKind::NumberFieldNonreal:
            if (j == 0) {
                if (twist == 0) return GroupExpr::fg(FgModule::free(Zl, 1));
                return GroupExpr::zero();  // finite mu
            }
            return std::nullopt;
        case FieldKind::FunctionFieldOverFinite:
            // symbolic-only field class: no chart assembly
            if (j == 0 && twist == 0) return GroupExpr::fg(FgModule::free(Zl, 1));
            return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Mod-ell motivic cohomology  (pi_star M F_ell = (K^M_*(k)/ell)[tau])
// ---------------------------------------------------------------------------

// pi_{m+n alpha} M F_ell: K^M_{-m-n}(k)/ell when m >= 0 and m+n <= 0, else 0.
inline GroupExpr motCohomFl(const FieldDescriptor& f, int m, int n, i64 ell) {
    if (ell == f.p)
        throw UnsupportedError("motCohomFl: ell equals the exponential characteristic");
    int c = -m - n;
    if (m < 0 || c < 0) return GroupExpr::zero();
    return milnorK(f, c, ell);
}

// ---------------------------------------------------------------------------
// Bockstein splitting of pi_{1+n alpha} M F_ell
// ---------------------------------------------------------------------------

// The two pieces of the short exact sequence
//   0 -> Z/ell (x) pi_{1+n alpha} M Z_ell -> pi_{1+n alpha} M F_ell
//     -> Tor(Z/ell, pi_{n alpha} M Z_ell) -> 0.
inline std::optional<std::pair<GroupExpr, GroupExpr>> bocksteinSplit(
    const FieldDescriptor& f, i64 ell, int n, const CohomTable* override_ = nullptr) {
    auto top = motCohomZl(f, 1, n, ell, override_);
    auto bottom = motCohomZl(f, 0, n, ell, override_);
    if (!top || !bottom) return std::nullopt;
    GroupExpr tensorPart = top->isZero() ? GroupExpr::zero() : exprTensorCyclic(*top, ell);
    GroupExpr torPart = bottom->isZero() ? GroupExpr::zero() : exprTorCyclic(*bottom, ell);
    return std::make_pair(tensorPart, torPart);
}

}  // namespace motivic
