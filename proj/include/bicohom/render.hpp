#pragma once

// ASCII grids and JSON tables for the command-line front end.

#include <functional>

#include <json.hpp>

#include "cohomology.hpp"
#include "exterior.hpp"
#include "frolicher.hpp"
#include "shapes.hpp"

namespace bicohom::render {

using nlohmann::json;

struct Style {
    bool enabled = false;
    std::string bold(const std::string& s) const { return enabled ? "\x1b[1m" + s + "\x1b[0m" : s; }
};

/// A (P+1)x(Q+1) grid of numbers, rows q = Q..0 from the top, p to the right.
inline std::string grid(const std::string& title, int P, int Q, const std::function<std::string(int, int)>& cell,
                        const Style& style = {}) {
    std::string out = style.bold(title) + "\n";
    if (P < 0 || Q < 0) return out;
    std::size_t width = std::max(std::to_string(P).size(), std::to_string(Q).size());
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) width = std::max(width, cell(p, q).size());
    auto pad = [](const std::string& s, std::size_t w) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; };
    const std::size_t label = std::max<std::size_t>(1, std::to_string(Q).size());
    out += "  " + pad("q", label) + "\n";
    for (int q = Q; q >= 0; --q) {
        out += "  " + pad(std::to_string(q), label) + " |";
        for (int p = 0; p <= P; ++p) out += " " + pad(cell(p, q), width);
        out += "\n";
    }
    out += "  " + std::string(label, ' ') + " +" + std::string(static_cast<std::size_t>(P + 1) * (width + 1), '-') + "\n";
    out += "  " + std::string(label, ' ') + "  ";
    for (int p = 0; p <= P; ++p) out += " " + pad(std::to_string(p), width);
    out += "  p\n";
    return out;
}

inline std::string table(const std::string& title, const CohomologyTable& t, const Style& style = {}) {
    return grid(title, t.P, t.Q, [&](int p, int q) { return std::to_string(t.at(p, q)); }, style);
}

template <class T>
std::string row(const std::vector<T>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? " " : "") + std::to_string(values[i]);
    return s;
}

/// "[a, b, c]"
template <class T>
std::string list(const std::vector<T>& values) {
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + std::to_string(values[i]);
    return s + "]";
}

/// Sorted array of {p, q, dim}.
inline json table_json(const CohomologyTable& t) {
    json a = json::array();
    for (int p = 0; p <= t.P; ++p)
        for (int q = 0; q <= t.Q; ++q) a.push_back({{"p", p}, {"q", q}, {"dim", t.at(p, q)}});
    return a;
}

inline json page_json(const SpectralPage& e) {
    json entries = json::array(), ranks = json::array();
    for (int p = 0; p <= e.P; ++p)
        for (int q = 0; q <= e.Q; ++q) {
            entries.push_back({{"p", p}, {"q", q}, {"dim", e.at(p, q)}});
            ranks.push_back({{"p", p}, {"q", q}, {"rank", e.rank_out(p, q)}});
        }
    return {{"r", e.r}, {"entries", entries}, {"differential_ranks", ranks}};
}

inline json shape_json(const ZigzagShape& s, std::size_t mult) {
    json j{{"kind", s.kind == ShapeKind::Dot ? "dot" : s.kind == ShapeKind::Square ? "square" : "zigzag"},
           {"p", s.anchor.p},
           {"q", s.anchor.q},
           {"multiplicity", mult},
           {"name", to_string(s)}};
    if (s.kind == ShapeKind::Zigzag) {
        j["step"] = s.first_step == Step::Horizontal ? "horizontal" : "vertical";
        j["length"] = s.length;
    }
    return j;
}

/// Generator names for printing forms.
inline std::vector<std::string> real_names(int n) {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back("e" + std::to_string(i));
    return v;
}

inline std::vector<std::string> coframe_names(int m) {
    std::vector<std::string> v;
    for (int i = 1; i <= m; ++i) v.push_back("phi" + std::to_string(i));
    for (int i = 1; i <= m; ++i) v.push_back("phibar" + std::to_string(i));
    return v;
}

/// e.g. "-e1^e3 + 2 e2^e3"; "0" for the zero form, "1" for the unit.
inline std::string form(const SparseForm& f, const std::vector<std::string>& names) {
    std::string out;
    for (const auto& [mask, c] : f) {
        std::string mono;
        for (Mask rest = mask; rest; rest &= rest - 1) {
            if (!mono.empty()) mono += "^";
            mono += names[static_cast<std::size_t>(std::countr_zero(rest))];
        }
        const bool negative = c.is_real() && c.re().sign() < 0;
        const Scalar mag = negative ? -c : c;
        std::string coef = mag == Scalar(1) ? "" : (mag.is_real() ? mag.str() : "(" + mag.str() + ")");
        std::string term = mono.empty() ? (coef.empty() ? "1" : coef) : (coef.empty() ? mono : coef + " " + mono);
        if (out.empty()) out = negative ? "-" + term : term;
        else out += (negative ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

} // namespace bicohom::render
