#pragma once

// Deterministic text, chart, and SVG rendering.  Identical inputs produce
// byte-identical output (golden-file testable).

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "motivic/abgrp.hpp"
#include "motivic/fracture.hpp"
#include "motivic/manss.hpp"

namespace motivic {

// ---------------------------------------------------------------------------
// Group expressions
// ---------------------------------------------------------------------------

inline std::string prettyLabel(const std::string& l) {
    static const std::map<std::string, std::string> table = {
        {"nu", "ν"},          // nu
        {"eta_s", "η_s"},     // eta_s
        {"eta eta_s", "ηη_s"},
        {"a1", "α₁"},
        {"ta1^3", "τα₁³"},
    };
    auto it = table.find(l);
    return it == table.end() ? l : it->second;
}

inline std::string renderAtom(const GroupExprAtom& a, bool ascii = false) {
    std::ostringstream os;
    switch (a.kind) {
        case AtomKind::FG: {
            const FgModule& m = a.fg;
            if (m.isZero()) return "0";
            bool first = true;
            std::string base = m.ring.isAdic() ? "Z_" + std::to_string(m.ring.ell) : "Z";
            std::string oplus = ascii ? " + " : " ⊕ ";
            for (i64 i = 0; i < m.freeRank; ++i) {
                if (!first) os << oplus;
                os << base;
                first = false;
            }
            for (i64 d : m.torsion) {
                if (!first) os << oplus;
                os << "Z/" << d;
                first = false;
            }
            return os.str();
        }
        case AtomKind::KM: {
            std::string base = a.kmDegree == 1 ? (ascii ? "k^x" : "k^×")
                                               : "K^M_" + std::to_string(a.kmDegree) + "(k)";
            if (a.kmMod > 0) base += "/" + std::to_string(a.kmMod);
            return base;
        }
        case AtomKind::TOR4K2: return "Tor(Z/4,K^M_2(k))";
        case AtomKind::QVEC:
            return a.qvecRank == 1 ? "Q" : "Q^" + std::to_string(a.qvecRank);
        case AtomKind::OPAQUE: return "[" + a.note + "]";
    }
    return "?";
}

inline std::string renderGroup(const GroupExpr& e, bool ascii = false, bool labels = true) {
    if (e.isZero()) return "0";
    std::ostringstream os;
    std::string oplus = ascii ? " + " : " ⊕ ";
    for (size_t i = 0; i < e.summands.size(); ++i) {
        if (i) os << oplus;
        os << renderAtom(e.summands[i].atom, ascii);
        if (labels && !e.summands[i].label.empty())
            os << "{" << (ascii ? e.summands[i].label : prettyLabel(e.summands[i].label)) << "}";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

inline std::string renderLComplete(const LCompleteResult& r, bool ascii = false) {
    std::string arrow = ascii ? " -> " : " → ";
    std::ostringstream os;
    switch (r.kind) {
        case LCompleteKind::Group: os << renderGroup(r.group, ascii); break;
        case LCompleteKind::SES:
            os << "0" << arrow << renderGroup(r.kernel, ascii) << arrow << r.totalLabel << arrow
               << renderGroup(r.quotient, ascii) << arrow << "0";
            break;
        case LCompleteKind::AssociatedGraded: {
            os << "associated graded: [";
            for (size_t i = 0; i < r.pieces.size(); ++i) {
                if (i) os << " | ";
                os << renderAtom(r.pieces[i].atom, ascii);
                if (!r.pieces[i].label.empty())
                    os << "{" << (ascii ? r.pieces[i].label : prettyLabel(r.pieces[i].label)) << "}";
            }
            os << "]";
            break;
        }
    }
    if (!r.note.empty()) os << "   (note: " << r.note << ")";
    return os.str();
}

inline std::string renderIntegral(const IntegralResult& r, bool ascii = false) {
    std::string arrow = ascii ? " -> " : " → ";
    std::ostringstream os;
    switch (r.kind) {
        case IntegralKind::Group: os << renderGroup(r.group, ascii); break;
        case IntegralKind::SES:
            os << "0" << arrow << renderGroup(r.kernel, ascii) << arrow << r.totalLabel << arrow
               << renderGroup(r.quotient, ascii) << arrow << "0";
            if (!r.additionLawDisplay.empty()) os << "   [" << r.additionLawDisplay << "]";
            break;
        case IntegralKind::FourTerm:
            os << "exact: ";
            for (size_t i = 0; i < r.terms.size(); ++i) {
                if (i) os << arrow;
                os << r.terms[i].label << " = " << renderGroup(r.terms[i].group, ascii);
            }
            break;
        case IntegralKind::Surjection:
            os << r.terms[0].label << " = " << renderGroup(r.terms[0].group, ascii)
               << (ascii ? " ->> " : " ↠ ") << r.terms[1].label;
            break;
    }
    if (!r.note.empty()) os << "   (note: " << r.note << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// ASCII chart
// ---------------------------------------------------------------------------

inline std::string entryCellText(const ChartEntry& e) {
    std::string suffix;
    switch (e.kind) {
        case EntryKind::Tensor: suffix = "(x)"; break;
        case EntryKind::Tor: suffix = "[T]"; break;
        case EntryKind::Merged: suffix = "[M]"; break;
    }
    return renderGroup(e.group, /*ascii=*/true, /*labels=*/false) + " " + e.genName + suffix;
}

// Grid with stems on the horizontal axis and s vertical.  Empty columns
// render as blank cells, not omitted columns.
inline std::string renderAsciiChart(const std::vector<ChartColumn>& cols, const std::string& title) {
    int maxS = 0;
    for (auto& c : cols)
        for (auto& e : c.entries) maxS = std::max(maxS, e.s);
    std::vector<std::vector<std::string>> cells(maxS + 1, std::vector<std::string>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (auto& e : cols[j].entries) {
            std::string& cell = cells[e.s][j];
            if (!cell.empty()) cell += "; ";
            cell += entryCellText(e);
        }
    std::vector<size_t> widths(cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        widths[j] = std::max<size_t>(8, std::to_string(cols[j].stem).size());
        for (int s = 0; s <= maxS; ++s) widths[j] = std::max(widths[j], cells[s][j].size());
    }
    std::ostringstream os;
    os << title << "\n";
    os << " s\\stem";
    for (size_t j = 0; j < cols.size(); ++j) {
        os << " | ";
        std::string h = std::to_string(cols[j].stem);
        os << h << std::string(widths[j] - h.size(), ' ');
    }
    os << "\n";
    os << "-------";
    for (size_t j = 0; j < cols.size(); ++j) os << "-+-" << std::string(widths[j], '-');
    os << "\n";
    for (int s = maxS; s >= 0; --s) {
        std::string h = std::to_string(s);
        os << std::string(7 - h.size(), ' ') << h;
        for (size_t j = 0; j < cols.size(); ++j)
            os << " | " << cells[s][j] << std::string(widths[j] - cells[s][j].size(), ' ');
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// SVG chart (hand-emitted, fixed viewport; tensor blue, Tor red)
// ---------------------------------------------------------------------------

inline std::string renderSvgChart(const std::vector<ChartColumn>& cols, const std::string& title) {
    int maxS = 0;
    for (auto& c : cols)
        for (auto& e : c.entries) maxS = std::max(maxS, e.s);
    const int cellW = 190, cellH = 48, left = 60, top = 50, bottom = 40;
    int width = left + cellW * (int)cols.size() + 20;
    int height = top + cellH * (maxS + 1) + bottom;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " " << height
       << "\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<style>text{font-family:monospace;font-size:12px}.tensor{fill:#1f4e9c}"
          ".tor{fill:#b02a2a}.merged{fill:#6a2a8c}.axis{fill:#000}</style>\n";
    os << "<text class=\"axis\" x=\"10\" y=\"20\">" << title << "</text>\n";
    for (int s = 0; s <= maxS; ++s) {
        int y = top + cellH * (maxS - s);
        os << "<text class=\"axis\" x=\"10\" y=\"" << y + cellH / 2 << "\">s=" << s << "</text>\n";
        for (size_t j = 0; j < cols.size(); ++j) {
            int x = left + cellW * (int)j;
            os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cellW << "\" height=\""
               << cellH << "\" fill=\"none\" stroke=\"#999\"/>\n";
        }
    }
    for (size_t j = 0; j < cols.size(); ++j) {
        int x = left + cellW * (int)j;
        os << "<text class=\"axis\" x=\"" << x + cellW / 2 << "\" y=\"" << height - 15
           << "\">stem " << cols[j].stem << "</text>\n";
        int line = 0;
        (void)line;
        std::map<int, int> used;  // s -> entries already placed
        for (auto& e : cols[j].entries) {
            int y = top + cellH * (maxS - e.s);
            int slot = used[e.s]++;
            std::string cls = e.kind == EntryKind::Tensor ? "tensor"
                              : e.kind == EntryKind::Tor ? "tor"
                                                         : "merged";
            os << "<text class=\"" << cls << "\" x=\"" << x + 6 << "\" y=\""
               << y + 16 + 14 * slot << "\">" << entryCellText(e) << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Sweep table
// ---------------------------------------------------------------------------

inline std::string renderSweep(const std::vector<std::pair<int, IntegralResult>>& rows,
                               const std::string& fieldStr, bool ascii = false) {
    std::ostringstream os;
    os << "pi_{1+n a} S[1/p]  field=" << fieldStr << "\n";
    for (auto& [n, r] : rows) {
        std::string h = std::to_string(n);
        os << "  n=" << h << std::string(h.size() < 3 ? 3 - h.size() : 0, ' ') << " | "
           << renderIntegral(r, ascii) << "\n";
    }
    return os.str();
}

}  // namespace motivic
