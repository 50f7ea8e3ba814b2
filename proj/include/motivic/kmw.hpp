#pragma once

// Symbolic Milnor-Witt/Milnor K-theory algebra, Grothendieck-Witt invariants
// of concrete fields, the twisted addition law on pi_1, and the
// Hermitian-K-theory target map e.

#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "motivic/abgrp.hpp"
#include "motivic/core.hpp"
#include "motivic/fieldcat.hpp"
#include "motivic/fracture.hpp"

namespace motivic {

// ---------------------------------------------------------------------------
// Unit symbols: abstract labels or powers of a fixed generator of F_q^x
// ---------------------------------------------------------------------------

struct UnitSym {
    bool concrete = false;
    i64 exp = 0;        // g^exp when concrete
    std::string label;  // abstract otherwise

    static UnitSym abstract(std::string l) { return {false, 0, std::move(l)}; }
    static UnitSym gen(i64 e) { return {true, e, ""}; }

    auto key() const { return std::tuple(concrete, exp, label); }
    bool operator==(const UnitSym& o) const { return key() == o.key(); }
    bool operator<(const UnitSym& o) const { return key() < o.key(); }

    std::string str() const { return concrete ? (exp == 1 ? "g" : "g^" + std::to_string(exp)) : label; }
};

// ---------------------------------------------------------------------------
// MWWord: formal sums of monomials  c * [u_1]...[u_r] * eta^j * (tag)
// ---------------------------------------------------------------------------

enum class PiTag { None, EtaS, Nu };

struct MWMonomial {
    i64 coef = 1;
    std::vector<UnitSym> units;
    int etaPow = 0;
    PiTag tag = PiTag::None;

    int degree() const { return (int)units.size() - etaPow; }  // MW grading; tags excluded

    auto key() const {
        std::vector<std::tuple<bool, i64, std::string>> us;
        for (auto& u : units) us.push_back(u.key());
        return std::tuple(us, etaPow, (int)tag);
    }
    std::string str() const {
        std::ostringstream os;
        os << coef;
        for (auto& u : units) os << "[" << u.str() << "]";
        if (etaPow == 1) os << "*eta";
        if (etaPow > 1) os << "*eta^" << etaPow;
        if (tag == PiTag::EtaS) os << "*eta_s";
        if (tag == PiTag::Nu) os << "*nu";
        return os.str();
    }
};

struct MWWord {
    std::vector<MWMonomial> terms;

    bool isZero() const { return terms.empty(); }

    MWWord& collect() {
        std::map<decltype(std::declval<MWMonomial>().key()), MWMonomial> acc;
        for (auto& t : terms) {
            auto it = acc.find(t.key());
            if (it == acc.end())
                acc.emplace(t.key(), t);
            else
                it->second.coef += t.coef;
        }
        terms.clear();
        for (auto& [k, m] : acc)
            if (m.coef != 0) terms.push_back(m);
        return *this;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        for (size_t i = 0; i < terms.size(); ++i) {
            if (i) s += " + ";
            s += terms[i].str();
        }
        return s;
    }
};

inline MWWord operator+(const MWWord& a, const MWWord& b) {
    MWWord w = a;
    w.terms.insert(w.terms.end(), b.terms.begin(), b.terms.end());
    return w.collect();
}

inline MWWord operator*(const MWWord& a, const MWWord& b) {
    MWWord w;
    for (auto& x : a.terms)
        for (auto& y : b.terms) {
            MWMonomial m;
            m.coef = x.coef * y.coef;
            m.units = x.units;
            m.units.insert(m.units.end(), y.units.begin(), y.units.end());
            m.etaPow = x.etaPow + y.etaPow;
            if (x.tag != PiTag::None && y.tag != PiTag::None)
                throw std::invalid_argument("MWWord: at most one pi-element tag per monomial");
            m.tag = x.tag != PiTag::None ? x.tag : y.tag;
            w.terms.push_back(std::move(m));
        }
    return w.collect();
}

// ---------------------------------------------------------------------------
// Parser for the text grammar: [u][1-u], (2+[-1]*eta)*eta, <u>*eta_s
// ---------------------------------------------------------------------------

namespace mwdetail {

struct Parser {
    std::string src;
    size_t pos = 0;

    explicit Parser(std::string s) : src(std::move(s)) {}

    void skip() {
        while (pos < src.size() && isspace((unsigned char)src[pos])) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool peekWord(const std::string& w) {
        skip();
        return src.compare(pos, w.size(), w) == 0;
    }
    bool eatWord(const std::string& w) {
        if (!peekWord(w)) return false;
        pos += w.size();
        return true;
    }

    MWWord parseExpr() {
        MWWord w = parseTerm();
        for (;;) {
            skip();
            if (eat('+')) {
                w = w + parseTerm();
            } else if (eat('-')) {
                MWWord t = parseTerm();
                for (auto& m : t.terms) m.coef = -m.coef;
                w = w + t;
            } else {
                return w;
            }
        }
    }

    MWWord parseTerm() {
        MWWord w = parseFactor();
        for (;;) {
            skip();
            if (eat('*')) {
                w = w * parseFactor();
            } else if (pos < src.size() &&
                       (src[pos] == '[' || src[pos] == '<' || src[pos] == '(' ||
                        isalpha((unsigned char)src[pos]))) {
                w = w * parseFactor();  // juxtaposition
            } else {
                return w;
            }
        }
    }

    MWWord parseFactor() {
        skip();
        if (pos >= src.size()) throw ParseError("unexpected end of word", pos);
        char c = src[pos];
        if (c == '(') {
            ++pos;
            MWWord w = parseExpr();
            if (!eat(')')) throw ParseError("expected ')'", pos);
            return w;
        }
        if (c == '[') {
            return singleton([&] {
                MWMonomial m;
                m.units.push_back(parseUnit(']'));
                return m;
            }());
        }
        if (c == '<') {
            // <u> = 1 + [u]*eta in GW(k) = K^MW_0
            UnitSym u = parseUnit('>');
            MWWord w;
            w.terms.push_back(MWMonomial{});
            MWMonomial m;
            m.units.push_back(u);
            m.etaPow = 1;
            w.terms.push_back(std::move(m));
            return w;
        }
        if (isdigit((unsigned char)c)) {
            size_t start = pos;
            while (pos < src.size() && isdigit((unsigned char)src[pos])) ++pos;
            MWMonomial m;
            m.coef = std::stoll(src.substr(start, pos - start));
            return singleton(std::move(m));
        }
        if (eatWord("eta_s")) {
            MWMonomial m;
            m.tag = PiTag::EtaS;
            return singleton(std::move(m));
        }
        if (eatWord("eta")) {
            MWMonomial m;
            m.etaPow = 1;
            return singleton(std::move(m));
        }
        if (eatWord("nu")) {
            MWMonomial m;
            m.tag = PiTag::Nu;
            return singleton(std::move(m));
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

    UnitSym parseUnit(char close) {
        ++pos;  // consume opener
        size_t start = pos;
        while (pos < src.size() && src[pos] != close) ++pos;
        if (pos >= src.size()) throw ParseError("unterminated unit symbol", start);
        std::string body = src.substr(start, pos - start);
        ++pos;
        if (body.empty()) throw ParseError("empty unit symbol (0 is not a unit)", start);
        if (body == "0") throw ParseError("0 is not a unit", start);
        if (body.rfind("g^", 0) == 0) return UnitSym::gen(std::stoll(body.substr(2)));
        if (body == "g") return UnitSym::gen(1);
        return UnitSym::abstract(body);
    }

    static MWWord singleton(MWMonomial m) {
        MWWord w;
        w.terms.push_back(std::move(m));
        return w;
    }
};

}  // namespace mwdetail

inline MWWord parseMW(const std::string& s) {
    mwdetail::Parser p(s);
    MWWord w = p.parseExpr();
    p.skip();
    if (p.pos != p.src.size()) throw ParseError("trailing input in MW word", p.pos);
    return w.collect();
}

// ---------------------------------------------------------------------------
// Directed-rule normalizer
// ---------------------------------------------------------------------------

// Rules, applied to a fixpoint:
//   eta commutes past symbols        (structural in the representation)
//   [u][1-u] = 0                     (Steinberg; textual or concrete)
//   (2 + [-1] eta) eta = 0           (as 2 X eta^j -> -X [-1] eta^{j+1})
// and over a finite field with fixed generator g:
//   any monomial with two unit symbols dies (K^MW_{>=2}(F_q) = 0)
//   [g^a] = a [g] modulo the above
inline MWWord normalizeMW(MWWord w, const FieldDescriptor* f = nullptr) {
    bool finite = f && f->kind == FieldKind::Finite;
    i64 qm1 = finite ? f->q - 1 : 0;

    auto steinbergKilled = [&](const MWMonomial& m) {
        for (size_t i = 0; i + 1 < m.units.size(); ++i) {
            const UnitSym &a = m.units[i], &b = m.units[i + 1];
            if (!a.concrete && !b.concrete &&
                (b.label == "1-" + a.label || a.label == "1-" + b.label))
                return true;
        }
        return false;
    };

    for (int pass = 0; pass < 64; ++pass) {
        bool changed = false;
        std::vector<MWMonomial> next;
        for (MWMonomial m : w.terms) {
            if (m.coef == 0) continue;
            if (steinbergKilled(m)) {
                changed = true;
                continue;
            }
            if (finite) {
                if (m.units.size() >= 2) {  // K^MW_{>=2}(F_q) = 0
                    changed = true;
                    continue;
                }
                if (m.units.size() == 1) {
                    UnitSym& u = m.units[0];
                    if (!u.concrete && u.label == "-1") {
                        u = UnitSym::gen(qm1 / 2);
                        changed = true;
                    }
                    if (u.concrete) {
                        i64 e = ((u.exp % qm1) + qm1) % qm1;
                        if (e == 0) {  // [1] = 0
                            changed = true;
                            continue;
                        }
                        // [g^e] = e [g] modulo 2-symbol terms (which die here)
                        if (e != 1) {
                            m.coef *= e;
                            u.exp = 1;
                            changed = true;
                        }
                    }
                }
                // coefficient reduction in the known cyclic pieces
                if (m.units.size() == 1 && m.units[0].concrete) {
                    i64 mod = m.etaPow == 0 ? qm1 : 2;  // (q-1)[g] = 0, 2[g]eta = 0
                    i64 r = ((m.coef % mod) + mod) % mod;
                    if (r != m.coef) {
                        m.coef = r;
                        changed = true;
                    }
                    if (m.coef == 0) {
                        changed = true;
                        continue;
                    }
                }
            }
            // 2 X eta^j  ->  -X [-1] eta^{j+1}   (from (2 + rho eta) eta = 0)
            if (m.etaPow >= 1 && m.coef % 2 == 0) {
                m.coef = -m.coef / 2;
                m.units.push_back(finite ? UnitSym::gen(qm1 / 2) : UnitSym::abstract("-1"));
                m.etaPow += 1;
                changed = true;
            }
            next.push_back(std::move(m));
        }
        w.terms = std::move(next);
        w.collect();
        if (!changed) break;
    }
    return w;
}

// ---------------------------------------------------------------------------
// Grothendieck-Witt invariants for concrete fields
// ---------------------------------------------------------------------------

// GW(k) as a group: algebraically closed fields see only the rank, finite
// fields rank and discriminant.
inline GroupExpr gw(const FieldDescriptor& f) {
    auto Z = RingTag::Z();
    switch (f.kind) {
        case FieldKind::AlgClosed: return GroupExpr::fg(FgModule::free(Z, 1), "rank");
        case FieldKind::Finite: {
            GroupExpr e = GroupExpr::fg(FgModule::free(Z, 1), "rank");
            e.add(GroupExprAtom::FG_(FgModule::cyclic(Z, 2)), "disc");
            return e;
        }
        default: return GroupExpr::of(GroupExprAtom::Opaque_("GW(" + f.str() + ")"));
    }
}

// Diagonal form <g^{e_1}, ..., g^{e_r}> over F_q, by generator exponents.
struct DiagForm {
    std::vector<i64> unitExps;

    i64 rank() const { return (i64)unitExps.size(); }
    i64 discParity() const {  // square class of the discriminant, as an exponent mod 2
        i64 s = 0;
        for (i64 e : unitExps) s += e;
        return ((s % 2) + 2) % 2;
    }
};

inline std::pair<i64, i64> gwInvariants(const FieldDescriptor& f, const DiagForm& form) {
    if (f.kind != FieldKind::Finite)
        throw UnsupportedError("gwInvariants: rank/disc classification needs a finite field");
    return {form.rank(), form.discParity()};
}

// ---------------------------------------------------------------------------
// pi_1 elements and the twisted addition law
// ---------------------------------------------------------------------------

// nuPart lives in K^M_2(k)/N, etaEtaSPart in K^M_1(k)/2, etaSPart in Z/2.
struct PiOneElement {
    std::map<std::pair<UnitSym, UnitSym>, i64> nuSymbols;  // formal Milnor symbols
    i64 nuCyclic = 0;             // concrete slot (local fields: Z/gcd(n,N))
    std::vector<UnitSym> etaEtaS;  // mod-2 multiset of unit classes
    int etaS = 0;

    bool operator==(const PiOneElement& o) const {
        return nuSymbols == o.nuSymbols && nuCyclic == o.nuCyclic && etaEtaS == o.etaEtaS &&
               etaS == o.etaS;
    }
};

namespace mwdetail {

// insert c * [a,b] with bilinearity conventions: antisymmetry orients the
// pair, Steinberg pairs vanish
inline void addSymbol(std::map<std::pair<UnitSym, UnitSym>, i64>& acc, UnitSym a, UnitSym b,
                      i64 c, i64 N) {
    if (!a.concrete && !b.concrete && (b.label == "1-" + a.label || a.label == "1-" + b.label))
        return;  // Steinberg
    i64 sign = 1;
    if (b < a) {
        std::swap(a, b);
        sign = -1;
    }
    auto key = std::make_pair(a, b);
    i64 v = acc[key] + sign * c;
    v %= N;
    if (v < 0) v += N;
    if (v == 0)
        acc.erase(key);
    else
        acc[key] = v;
}

inline std::vector<UnitSym> xorUnits(std::vector<UnitSym> a, const std::vector<UnitSym>& b) {
    for (auto& u : b) {
        auto it = std::find(a.begin(), a.end(), u);
        if (it != a.end())
            a.erase(it);  // square class cancels mod 2
        else
            a.push_back(u);
    }
    std::sort(a.begin(), a.end());
    return a;
}

}  // namespace mwdetail

// Canonicalize against the field: finite fields have K^M_2 = 0 (no nu part)
// and k^x/2 generated by the class of g.
inline PiOneElement canonicalizePiOne(PiOneElement x, const FieldDescriptor& f) {
    if (f.kind == FieldKind::Finite) {
        x.nuSymbols.clear();
        x.nuCyclic = 0;
        i64 parity = 0;
        std::vector<UnitSym> rest;
        for (auto& u : x.etaEtaS) {
            if (u.concrete)
                parity += u.exp;
            else if (u.label == "-1")
                parity += (f.q - 1) / 2;
            else
                rest.push_back(u);
        }
        if (((parity % 2) + 2) % 2 == 1) rest.push_back(UnitSym::gen(1));
        std::sort(rest.begin(), rest.end());
        x.etaEtaS = std::move(rest);
    }
    if (f.kind == FieldKind::LocalCharZero || f.kind == FieldKind::LocalPosChar) {
        i64 slot = gcd_ll(f.nRoots, nuModulus(expChar(f)));
        if (slot > 0) x.nuCyclic = ((x.nuCyclic % slot) + slot) % slot;
    }
    x.etaS = ((x.etaS % 2) + 2) % 2;
    return x;
}

// The twisted addition law:
//   [u] ee_s + [v] ee_s = [uv] ee_s - c [u,v] nu,  c = 12 (p not in {2,3}), 4 (p = 3)
inline PiOneElement piOneAdd(const PiOneElement& x, const PiOneElement& y,
                             const FieldDescriptor& f) {
    i64 p = expChar(f);
    i64 N = nuModulus(p);
    if (p == 2) {
        if (!x.etaEtaS.empty() || !y.etaEtaS.empty() || x.etaS || y.etaS)
            throw UnsupportedError("piOneAdd: pi_1 S[1/2] = K^M_2(k)/3 has no eta_s parts");
    }
    PiOneElement r;
    r.etaS = (x.etaS + y.etaS) % 2;
    r.etaEtaS = mwdetail::xorUnits(x.etaEtaS, y.etaEtaS);
    r.nuCyclic = x.nuCyclic + y.nuCyclic;
    r.nuSymbols = x.nuSymbols;
    for (auto& [k, c] : y.nuSymbols) mwdetail::addSymbol(r.nuSymbols, k.first, k.second, c, N);
    if (p != 2) {
        i64 c = p == 3 ? 4 : 12;
        // bilinear expansion of -c [u, v] over the two unit-class multisets
        for (auto& a : x.etaEtaS)
            for (auto& b : y.etaEtaS) mwdetail::addSymbol(r.nuSymbols, a, b, -c, N);
    }
    return canonicalizePiOne(r, f);
}

// The unit map to Hermitian K-theory: e = (SN, det); kernel is the nu part.
inline std::pair<std::vector<UnitSym>, int> hermitianE(const PiOneElement& x) {
    return {x.etaEtaS, x.etaS};
}

}  // namespace motivic
