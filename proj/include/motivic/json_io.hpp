#pragma once

// JSON serialization for group expressions, chart columns, results, and the
// topological dataset dump, plus the CohomTable loader.

#include <string>

#include <json.hpp>

#include "motivic/abgrp.hpp"
#include "motivic/fieldcat.hpp"
#include "motivic/fracture.hpp"
#include "motivic/manss.hpp"
#include "motivic/ssinput.hpp"

namespace motivic {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// GroupExpr
// ---------------------------------------------------------------------------

inline json toJson(const GroupExprAtom& a) {
    switch (a.kind) {
        case AtomKind::FG: {
            json j{{"kind", "FG"}};
            if (a.fg.ring.isAdic()) {
                j["ring"] = "Zl";
                j["l"] = a.fg.ring.ell;
            } else {
                j["ring"] = "Z";
            }
            j["free"] = a.fg.freeRank;
            j["torsion"] = a.fg.torsion;
            return j;
        }
        case AtomKind::KM:
            return json{{"kind", "KM"}, {"degree", a.kmDegree}, {"mod", a.kmMod},
                        {"bound", a.kmBound}};
        case AtomKind::TOR4K2: return json{{"kind", "TOR4K2"}};
        case AtomKind::QVEC: return json{{"kind", "QVEC"}, {"rank", a.qvecRank}};
        case AtomKind::OPAQUE: return json{{"kind", "OPAQUE"}, {"note", a.note}};
    }
    return json{};
}

inline GroupExprAtom atomFromJson(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "FG") {
        RingTag r = j.value("ring", "Z") == std::string("Zl") ? RingTag::Zl(j.at("l").get<i64>())
                                                              : RingTag::Z();
        std::vector<i64> tors = j.value("torsion", std::vector<i64>{});
        FgModule m(r, j.value("free", (i64)0), tors);
        return GroupExprAtom::FG_(std::move(m));
    }
    if (kind == "KM")
        return GroupExprAtom::KM_(j.at("degree").get<int>(), j.at("mod").get<i64>(),
                                  j.value("bound", true));
    if (kind == "TOR4K2") return GroupExprAtom::Tor4K2_();
    if (kind == "QVEC") return GroupExprAtom::QVec_(j.at("rank").get<i64>());
    if (kind == "OPAQUE") return GroupExprAtom::Opaque_(j.value("note", ""));
    throw ParseError("unknown atom kind '" + kind + "'", 0);
}

inline json toJson(const GroupExpr& e) {
    json arr = json::array();
    for (auto& s : e.summands) arr.push_back(json{{"atom", toJson(s.atom)}, {"label", s.label}});
    return json{{"summands", arr}};
}

inline GroupExpr groupExprFromJson(const json& j) {
    GroupExpr e;
    for (auto& s : j.at("summands"))
        e.summands.push_back({atomFromJson(s.at("atom")), s.value("label", "")});
    return e;
}

// ---------------------------------------------------------------------------
// Chart columns
// ---------------------------------------------------------------------------

inline json toJson(const ChartEntry& e) {
    return json{{"s", e.s},           {"stem", e.stem},       {"weight", e.weight},
                {"group", toJson(e.group)}, {"gen", e.genName}, {"kind", e.kindStr()},
                {"source", e.sourceName},   {"coeffM", e.coeffM}, {"coeffN", e.coeffN}};
}

inline json toJson(const ChartColumn& c) {
    json arr = json::array();
    for (auto& e : c.entries) arr.push_back(toJson(e));
    return json{{"prime", c.prime}, {"stem", c.stem}, {"weight", c.weight}, {"entries", arr}};
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

inline json toJson(const LCompleteResult& r) {
    switch (r.kind) {
        case LCompleteKind::Group:
            return json{{"kind", "group"}, {"group", toJson(r.group)}, {"note", r.note}};
        case LCompleteKind::SES:
            return json{{"kind", "ses"},
                        {"kernel", toJson(r.kernel)},
                        {"total", r.totalLabel},
                        {"quotient", toJson(r.quotient)},
                        {"note", r.note}};
        case LCompleteKind::AssociatedGraded: {
            json arr = json::array();
            for (auto& p : r.pieces)
                arr.push_back(json{{"atom", toJson(p.atom)}, {"label", p.label}});
            return json{{"kind", "assocgraded"}, {"pieces", arr}, {"note", r.note}};
        }
    }
    return json{};
}

inline LCompleteResult lCompleteFromJson(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    LCompleteResult r;
    r.note = j.value("note", "");
    if (kind == "group") {
        r.kind = LCompleteKind::Group;
        r.group = groupExprFromJson(j.at("group"));
    } else if (kind == "ses") {
        r.kind = LCompleteKind::SES;
        r.kernel = groupExprFromJson(j.at("kernel"));
        r.totalLabel = j.value("total", "");
        r.quotient = groupExprFromJson(j.at("quotient"));
    } else if (kind == "assocgraded") {
        r.kind = LCompleteKind::AssociatedGraded;
        for (auto& p : j.at("pieces"))
            r.pieces.push_back({atomFromJson(p.at("atom")), p.value("label", "")});
    } else {
        throw ParseError("unknown result kind '" + kind + "'", 0);
    }
    return r;
}

inline json toJson(const IntegralResult& r) {
    switch (r.kind) {
        case IntegralKind::Group:
            return json{{"kind", "group"}, {"group", toJson(r.group)}, {"note", r.note}};
        case IntegralKind::SES:
            return json{{"kind", "SES"},
                        {"kernel", toJson(r.kernel)},
                        {"total", r.totalLabel},
                        {"quotient", toJson(r.quotient)},
                        {"additionLaw", r.additionLawTag},
                        {"additionLawDisplay", r.additionLawDisplay},
                        {"note", r.note}};
        case IntegralKind::FourTerm:
        case IntegralKind::Surjection: {
            json arr = json::array();
            for (auto& t : r.terms)
                arr.push_back(json{{"label", t.label}, {"group", toJson(t.group)}});
            return json{{"kind", r.kind == IntegralKind::FourTerm ? "fourterm" : "surjection"},
                        {"terms", arr},
                        {"note", r.note}};
        }
    }
    return json{};
}

inline IntegralResult integralFromJson(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    IntegralResult r;
    r.note = j.value("note", "");
    if (kind == "group") {
        r.kind = IntegralKind::Group;
        r.group = groupExprFromJson(j.at("group"));
    } else if (kind == "SES") {
        r.kind = IntegralKind::SES;
        r.kernel = groupExprFromJson(j.at("kernel"));
        r.totalLabel = j.value("total", "");
        r.quotient = groupExprFromJson(j.at("quotient"));
        r.additionLawTag = j.value("additionLaw", "");
        r.additionLawDisplay = j.value("additionLawDisplay", "");
    } else if (kind == "fourterm" || kind == "surjection") {
        r.kind = kind == "fourterm" ? IntegralKind::FourTerm : IntegralKind::Surjection;
        for (auto& t : j.at("terms"))
            r.terms.push_back({t.value("label", ""), groupExprFromJson(t.at("group"))});
    } else {
        throw ParseError("unknown result kind '" + kind + "'", 0);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Topological dataset dump and CohomTable loading
// ---------------------------------------------------------------------------

inline json dumpTopAnss(i64 ell, int maxStem = kCuratedMaxStem) {
    json arr = json::array();
    for (auto& e : topAnssEntries(ell, maxStem)) {
        json j{{"name", e.name}, {"s", e.s}, {"t", e.t}};
        if (e.group.isFree())
            j["order"] = "Zl-free";
        else
            j["order"] = e.group.order().value;
        if (!e.paperVerified) j["unverified"] = true;
        arr.push_back(std::move(j));
    }
    return arr;
}

// JSON object keyed by "l,m,n".  Entries inside the forced-vanishing range
// must be zero; anything else is rejected.
inline CohomTable loadCohomTable(const json& j, const FieldDescriptor& f) {
    CohomTable t;
    int cd = cohomologicalDimension(f);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        i64 ell;
        int m, n;
        if (sscanf(key.c_str(), "%lld,%d,%d", &ell, &m, &n) != 3)
            throw ParseError("CohomTable key must be 'l,m,n', got '" + key + "'", 0);
        GroupExpr g = groupExprFromJson(it.value());
        int deg = -m - n;
        bool forcedZero = m < 0 || deg < 0 || deg > cd;
        if (forcedZero && !g.isZero())
            throw ParseError("CohomTable entry " + key + " violates the vanishing range", 0);
        t.entries[key] = std::move(g);
    }
    return t;
}

}  // namespace motivic
