#pragma once

// Curated low-range topological Adams-Novikov E_2 dataset per prime, the
// slice-spectral-sequence collapse checker, and polynomial-generator
// bookkeeping for ell-complete BP coefficients.

#include <string>
#include <vector>

#include "motivic/abgrp.hpp"
#include "motivic/core.hpp"
#include "motivic/fieldcat.hpp"

namespace motivic {

constexpr int kCuratedMaxStem = 7;

struct TopAnssEntry {
    std::string name;  // "1", "a1^3", "a2/2", "a3", "a3a1^2", "b2/2", "a4/4"
    int s = 0;         // homological degree
    int t = 0;         // internal degree (even)
    FgModule group;    // over Z_ell
    bool paperVerified = true;  // false: stored but excluded from acceptance

    int stem() const { return t - s; }
};

namespace detail {

inline TopAnssEntry alphaOnePower(i64 ell, int k) {
    // Z/2{a1^k} at (k, 2k); only meaningful at ell = 2 for k >= 2
    TopAnssEntry e;
    e.name = k == 1 ? "a1" : "a1^" + std::to_string(k);
    e.s = k;
    e.t = 2 * k;
    e.group = FgModule::cyclic(RingTag::Zl(ell), 2);
    return e;
}

inline TopAnssEntry alphaThreeAlphaOne(int j) {
    // Z/2{a3 a1^j} at (1+j, 6+2j)
    TopAnssEntry e;
    e.name = j == 0 ? "a3" : (j == 1 ? "a3a1" : "a3a1^" + std::to_string(j));
    e.s = 1 + j;
    e.t = 6 + 2 * j;
    e.group = FgModule::cyclic(RingTag::Zl(2), 2);
    return e;
}

}  // namespace detail

// Entries of the topological ANSS E_2 page with stem in [stemLo, stemHi].
//
// Beyond the curated stem-7 window only the two regular families written
// down for every weight (the a1-power tower and the a3 a1^j tower) are
// generated; asking for a window that could contain anything else throws.
inline std::vector<TopAnssEntry> topAnssWindow(i64 ell, int stemLo, int stemHi,
                                               bool familiesOnlyBeyondCurated = false) {
    if (!isPrime(ell)) throw std::invalid_argument("topAnssWindow: ell must be prime");
    if (stemHi > kCuratedMaxStem && !familiesOnlyBeyondCurated)
        throw UnsupportedError("topological ANSS data requested beyond the curated range (stem " +
                               std::to_string(stemHi) + " > " + std::to_string(kCuratedMaxStem) +
                               ")");
    std::vector<TopAnssEntry> out;
    auto keep = [&](TopAnssEntry e) {
        if (e.stem() >= stemLo && e.stem() <= stemHi) out.push_back(std::move(e));
    };

    if (stemLo <= 0 && stemHi >= 0) {
        TopAnssEntry unit;
        unit.name = "1";
        unit.s = 0;
        unit.t = 0;
        unit.group = FgModule::free(RingTag::Zl(ell), 1);
        out.push_back(unit);
    }

    if (ell == 2) {
        for (int k = std::max(1, stemLo); k <= stemHi; ++k) keep(detail::alphaOnePower(2, k));
        {
            TopAnssEntry a22;  // Z/4{a2/2} at (1,4)
            a22.name = "a2/2";
            a22.s = 1;
            a22.t = 4;
            a22.group = FgModule::cyclic(RingTag::Zl(2), 4);
            keep(a22);
        }
        for (int j = 0; 5 + j <= stemHi; ++j) keep(detail::alphaThreeAlphaOne(j));
        {
            TopAnssEntry b22;  // Z/2{b2/2} = Z/2{(a2/2)^2} at (2,8)
            b22.name = "b2/2";
            b22.s = 2;
            b22.t = 8;
            b22.group = FgModule::cyclic(RingTag::Zl(2), 2);
            b22.paperVerified = false;
            keep(b22);
        }
        {
            TopAnssEntry a44;  // Z/16{a4/4} at (1,8)
            a44.name = "a4/4";
            a44.s = 1;
            a44.t = 8;
            a44.group = FgModule::cyclic(RingTag::Zl(2), 16);
            a44.paperVerified = false;
            keep(a44);
        }
    } else {
        // odd ell: first entry after the unit is Z/ell{a1} at (1, 2*ell - 2),
        // total dimension 2*ell - 3; nothing else in the curated window
        TopAnssEntry a1;
        a1.name = "a1";
        a1.s = 1;
        a1.t = (int)(2 * ell - 2);
        a1.group = FgModule::cyclic(RingTag::Zl(ell), ell);
        keep(a1);
    }
    std::sort(out.begin(), out.end(), [](const TopAnssEntry& a, const TopAnssEntry& b) {
        return std::tuple(a.stem(), a.s, a.name) < std::tuple(b.stem(), b.s, b.name);
    });
    return out;
}

// Curated dataset view: everything with stem <= maxStem.  Requests beyond the
// curated range fail loudly (never silently truncate).
inline std::vector<TopAnssEntry> topAnssEntries(i64 ell, int maxStem) {
    if (maxStem > kCuratedMaxStem)
        throw UnsupportedError("topAnssEntries: maxStem " + std::to_string(maxStem) +
                               " beyond curated range " + std::to_string(kCuratedMaxStem));
    return topAnssWindow(ell, 0, maxStem);
}

// ---------------------------------------------------------------------------
// Slice collapse check (the displayed inequality of the collapse theorem)
// ---------------------------------------------------------------------------

struct SliceDifferentialReport {
    // (r, sourceIndex, targetIndex) with the target inside the nonvanishing window
    std::vector<std::tuple<int, int, int>> survivors;

    bool collapseForced() const { return survivors.empty(); }
};

// Differentials d_r raise the window index by 2r + 1; a slice-diagonal
// spectrum collapses exactly when no target index stays within [0, cd].
inline SliceDifferentialReport sliceCollapseCheck(int cd, int rMax) {
    if (cd < 0 || rMax < 1) throw std::invalid_argument("sliceCollapseCheck: need cd >= 0, rMax >= 1");
    SliceDifferentialReport rep;
    for (int w = 0; w <= cd; ++w)
        for (int r = 1; r <= rMax; ++r)
            if (w + 2 * r + 1 <= cd) rep.survivors.emplace_back(r, w, w + 2 * r + 1);
    return rep;
}

// ---------------------------------------------------------------------------
// BP coefficient monomials (pi_star BP = (pi_star M Z_ell)[v_1, v_2, ...])
// ---------------------------------------------------------------------------

struct BpMonomial {
    std::vector<int> exps;  // exps[i] = exponent of v_{i+1}
    int diagDeg = 0;        // Sum exps[i] * (ell^{i+1} - 1); |monomial| = diagDeg*(1+alpha)

    std::string str() const {
        if (diagDeg == 0) return "1";
        std::string s;
        for (size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (!s.empty()) s += " ";
            s += "v" + std::to_string(i + 1);
            if (exps[i] > 1) s += "^" + std::to_string(exps[i]);
        }
        return s;
    }
};

struct BpCoefficientEntry {
    BpMonomial monomial;
    int m = 0;  // total bidegree (m + diag) + (n + diag) alpha
    int n = 0;
    GroupExpr group;  // pi_{m+n alpha} M Z_ell
};

// All monomials with diagonal degree <= maxDiag.
inline std::vector<BpMonomial> bpMonomials(i64 ell, int maxDiag) {
    std::vector<i64> sizes;  // ell^i - 1
    for (i64 x = ell - 1; x <= maxDiag; x = (x + 1) * ell - 1) sizes.push_back(x);
    std::vector<BpMonomial> out;
    std::vector<int> exps(sizes.size(), 0);
    auto emit = [&](int deg) {
        BpMonomial m;
        m.exps = exps;
        while (!m.exps.empty() && m.exps.back() == 0) m.exps.pop_back();
        m.diagDeg = deg;
        out.push_back(std::move(m));
    };
    std::function<void(size_t, int)> rec = [&](size_t i, int deg) {
        if (i == sizes.size()) {
            emit(deg);
            return;
        }
        for (int e = 0; deg + e * sizes[i] <= maxDiag; ++e) {
            exps[i] = e;
            rec(i + 1, deg + (int)(e * sizes[i]));
        }
        exps[i] = 0;
    };
    if (sizes.empty())
        emit(0);
    else
        rec(0, 0);
    std::sort(out.begin(), out.end(), [](const BpMonomial& a, const BpMonomial& b) {
        return std::tuple(a.diagDeg, a.exps) < std::tuple(b.diagDeg, b.exps);
    });
    return out;
}

// Monomials paired with the known nonzero coefficient groups whose total
// simplicial degree stays within the window.
inline std::vector<BpCoefficientEntry> bpCoefficients(const FieldDescriptor& f, i64 ell,
                                                      int stemWindow,
                                                      const CohomTable* override_ = nullptr) {
    if (cdCheck(f, ell) != CdStatus::LowDim)
        throw UnsupportedError("bpCoefficients: field is not ell-low-dimensional at ell = " +
                               std::to_string(ell));
    int cd = cohomologicalDimension(f);
    std::vector<BpCoefficientEntry> out;
    for (const BpMonomial& mono : bpMonomials(ell, stemWindow)) {
        for (int m = 0; m + mono.diagDeg <= stemWindow; ++m)
            for (int j = 0; j <= cd; ++j) {  // j = -m-n
                int n = -m - j;
                auto g = motCohomZl(f, m, n, ell, override_);
                if (!g || g->isZero()) continue;
                BpCoefficientEntry e;
                e.monomial = mono;
                e.m = m;
                e.n = n;
                e.group = *g;
                out.push_back(std::move(e));
            }
    }
    return out;
}

}  // namespace motivic
