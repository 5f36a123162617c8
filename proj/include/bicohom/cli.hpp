#pragma once

// The bicohom command line: argument handling and one function per command.
// run() returns the exit code and the text for stdout and stderr.

#include <CLI11.hpp>

#include "catalog.hpp"
#include "cohomology.hpp"
#include "frolicher.hpp"
#include "io.hpp"
#include "massey.hpp"
#include "render.hpp"
#include "zigzag.hpp"

namespace bicohom::cli {

using nlohmann::json;

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

/// 0 success, 1 malformed or unsupported input, 2 validation failure, 3 internal error.
inline int exit_code(ErrorCode c) {
    switch (c) {
    case ErrorCode::InvalidBicomplex:
    case ErrorCode::JacobiViolation:
    case ErrorCode::NotIntegrable:
    case ErrorCode::NotAlmostComplex:
    case ErrorCode::NotClosed: return 2;
    case ErrorCode::InternalInconsistency: return 3;
    default: return 1;
    }
}

struct Job {
    std::string command;
    std::string input;
    bool json = false;
    std::optional<int> page;
    std::optional<int> degree;
    std::optional<std::string> classes;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"validate", "cohomology", "frolicher", "zigzag", "ddbar",
                                                "lemma515", "massey",     "central-series", "inequalities"};
    return names;
}

inline constexpr const char* hypothesis_banner =
    "note: Lie-algebra input. These are the cohomologies of left-invariant forms. They agree with the\n"
    "      cohomology of a compact quotient only under Nomizu-type hypotheses, which are not checked.\n";

namespace detail {

struct Context {
    const Job& job;
    const Presentation& pres;
    render::Style style;
    Outcome result;

    void text(const std::string& s) { result.out += s; }
    void emit(json j) {
        j["command"] = job.command;
        j["input"] = job.input;
        result.out += j.dump(2) + "\n";
    }
};

inline std::string input_kind(const Presentation& p) {
    if (std::holds_alternative<RealPresentation>(p.data)) return "real";
    if (std::holds_alternative<ComplexCoframe>(p.data)) return "coframe";
    return "bicomplex";
}

inline std::string describe(const Presentation& p) {
    if (const auto* r = std::get_if<RealPresentation>(&p.data))
        return "real Lie algebra, n = " + std::to_string(r->g.dim()) + (r->J ? ", with J" : ", no J");
    if (const auto* c = std::get_if<ComplexCoframe>(&p.data))
        return "complex coframe, m = " + std::to_string(c->m);
    const Bicomplex& b = std::get<Bicomplex>(p.data);
    return "double complex on [0," + std::to_string(b.P()) + "]x[0," + std::to_string(b.Q()) + "]";
}

inline std::string bidegree(Bidegree b) { return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")"; }

inline json dims_json(const Bicomplex& b) {
    json a = json::array();
    for (int p = 0; p <= b.P(); ++p)
        for (int q = 0; q <= b.Q(); ++q) a.push_back({{"p", p}, {"q", q}, {"dim", b.dim(p, q)}});
    return a;
}

inline std::string dims_grid(const Bicomplex& b, const render::Style& style) {
    return render::grid("dim A^{p,q}", b.P(), b.Q(), [&](int p, int q) { return std::to_string(b.dim(p, q)); }, style);
}

// ------------------------------------------------------------ validate

struct Check {
    std::string name;
    bool ok = true;
    std::string detail;
};

inline void validate(Context& ctx) {
    std::vector<Check> checks;
    std::optional<Bicomplex> built;
    int code = 0;
    auto attempt = [&](const std::string& name, const std::function<std::string()>& body) {
        if (code != 0) return;
        try {
            checks.push_back({name, true, body()});
        } catch (const Error& e) {
            checks.push_back({name, false, e.what()});
            code = exit_code(e.code());
        }
    };
    const Presentation& pres = ctx.pres;
    if (const auto* r = std::get_if<RealPresentation>(&pres.data)) {
        attempt("Jacobi identity", [&] {
            require_jacobi(r->g);
            return std::string();
        });
        if (r->J) {
            attempt("J^2 = -id", [&] {
                require_almost_complex(r->g, *r->J);
                return std::string();
            });
            attempt("Nijenhuis tensor vanishes", [&] {
                NijenhuisReport rep = nijenhuis(r->g, *r->J);
                if (!rep.integrable()) {
                    const auto& v = rep.nonzero.front();
                    fail(ErrorCode::NotIntegrable, "N_J(e" + std::to_string(v.i + 1) + ",e" + std::to_string(v.j + 1) +
                                                       ") != 0 (" + std::to_string(rep.nonzero.size()) + " basis pairs)");
                }
                return std::string();
            });
            attempt("double complex axioms", [&] {
                built = build_bicomplex(r->g, *r->J);
                return std::string();
            });
        }
    } else if (const auto* c = std::get_if<ComplexCoframe>(&pres.data)) {
        attempt("no (0,2) part and d^2 = 0", [&] {
            built = build_bicomplex_coframe(*c);
            return std::string();
        });
    } else {
        const Bicomplex& b = std::get<Bicomplex>(pres.data);
        ValidationReport rep = bicohom::validate(b);
        for (const Violation& v : rep.violations) checks.push_back({v.axiom, false, "fails at " + bidegree(v.at)});
        if (rep.ok()) {
            checks.push_back({"double complex axioms", true, ""});
            built = b;
        } else {
            code = exit_code(ErrorCode::InvalidBicomplex);
        }
    }
    ctx.result.code = code;
    if (ctx.job.json) {
        json cs = json::array();
        for (const auto& c : checks) cs.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        json j{{"valid", code == 0}, {"input_type", input_kind(pres)}, {"checks", cs}};
        if (built) j["dims"] = dims_json(*built);
        ctx.emit(j);
        return;
    }
    ctx.text("input: " + describe(pres) + "\n");
    for (const auto& c : checks)
        ctx.text(std::string(c.ok ? "[ok]   " : "[fail] ") + c.name + (c.detail.empty() ? "" : ": " + c.detail) + "\n");
    if (const auto* r = std::get_if<RealPresentation>(&pres.data); r && !r->J && code == 0)
        ctx.text("no complex structure given: only central-series and massey apply\n");
    if (built) ctx.text(dims_grid(*built, ctx.style));
    ctx.text(std::string("valid: ") + (code == 0 ? "yes" : "no") + "\n");
}

// ---------------------------------------------------------- cohomology

inline void cohomology(Context& ctx) {
    Bicomplex b = bicomplex_of(ctx.pres);
    CohomologySummary s = all_cohomology(b);
    std::vector<long> delta = delta_all(b);
    if (ctx.job.json) {
        json j{{"betti", s.de_rham.entries},
               {"dolbeault", render::table_json(s.dolbeault)},
               {"conj_dolbeault", render::table_json(s.conj_dolbeault)},
               {"bott_chern", render::table_json(s.bott_chern)},
               {"aeppli", render::table_json(s.aeppli)},
               {"delta", delta},
               {"P", b.P()},
               {"Q", b.Q()}};
        if (ctx.pres.is_lie()) j["hypothesis"] = hypothesis_banner;
        ctx.emit(j);
        return;
    }
    if (ctx.pres.is_lie()) ctx.text(hypothesis_banner);
    ctx.text(ctx.style.bold("de Rham b_k") + " (k = 0.." + std::to_string(b.top_degree()) + "): " +
             render::row(s.de_rham.entries) + "\n");
    ctx.text(render::table("Dolbeault h^{p,q}", s.dolbeault, ctx.style));
    ctx.text(render::table("conjugate Dolbeault (del) h^{p,q}", s.conj_dolbeault, ctx.style));
    ctx.text(render::table("Bott-Chern h^{p,q}", s.bott_chern, ctx.style));
    ctx.text(render::table("Aeppli h^{p,q}", s.aeppli, ctx.style));
    ctx.text(ctx.style.bold("Delta_k") + " = h^k_BC + h^k_A - 2 b_k: " + render::row(delta) + "\n");
}

// ----------------------------------------------------------- frolicher

inline void frolicher(Context& ctx) {
    Bicomplex b = bicomplex_of(ctx.pres);
    FrolicherResult f = bicohom::frolicher(b, b.P() + b.Q() + 2);
    const int shown = ctx.job.page ? std::min(*ctx.job.page, f.last_computed) : f.stable_from;
    if (ctx.job.page && *ctx.job.page < 1) fail(ErrorCode::SchemaError, "--page must be at least 1");
    CohomologyTable dr = de_rham(b);
    std::vector<std::size_t> e1_sum;
    for (int k = 0; k <= b.top_degree(); ++k) e1_sum.push_back(f.pages.front().degree(k));
    if (ctx.job.json) {
        json pages = json::array();
        for (int r = 1; r <= shown; ++r) pages.push_back(render::page_json(f.pages[static_cast<std::size_t>(r - 1)]));
        ctx.emit({{"pages", pages},
                  {"stable_from", f.stable_from},
                  {"infinity", render::page_json(f.infinity)["entries"]},
                  {"betti", dr.entries},
                  {"e1_degree_sums", e1_sum}});
        return;
    }
    for (int r = 1; r <= shown; ++r) {
        const SpectralPage& e = f.pages[static_cast<std::size_t>(r - 1)];
        ctx.text(render::grid("E_" + std::to_string(r), e.P, e.Q, [&](int p, int q) { return std::to_string(e.at(p, q)); },
                              ctx.style));
        std::string nonzero;
        for (int p = 0; p <= e.P; ++p)
            for (int q = 0; q <= e.Q; ++q)
                if (e.rank_out(p, q) > 0)
                    nonzero += " " + bidegree({p, q}) + "->" + bidegree({p + r, q - r + 1}) + " rank " +
                               std::to_string(e.rank_out(p, q)) + ";";
        ctx.text("  d_" + std::to_string(r) + (nonzero.empty() ? " = 0\n" : ":" + nonzero + "\n"));
    }
    ctx.text("degenerates at E_" + std::to_string(f.stable_from) + "\n");
    ctx.text("b_k:            " + render::row(dr.entries) + "\n");
    ctx.text("sum_{p+q=k} E_1: " + render::row(e1_sum) + "\n");
}

// -------------------------------------------------------------- zigzag

inline void zigzag(Context& ctx) {
    Bicomplex b = bicomplex_of(ctx.pres);
    ZigzagDecomposition z = decompose(b);
    std::size_t dots = 0, squares = 0, zigzags = 0;
    for (const auto& [s, m] : z.multiplicities)
        (s.kind == ShapeKind::Dot ? dots : s.kind == ShapeKind::Square ? squares : zigzags) += m;
    if (ctx.job.json) {
        json shapes = json::array();
        for (const auto& [s, m] : z.multiplicities) shapes.push_back(render::shape_json(s, m));
        ctx.emit({{"P", z.P},
                  {"Q", z.Q},
                  {"shapes", shapes},
                  {"dots", dots},
                  {"squares", squares},
                  {"zigzags", zigzags},
                  {"only_dots_and_squares", z.only_dots_and_squares()}});
        return;
    }
    ctx.text(ctx.style.bold("indecomposable summands") + "\n");
    for (const auto& [s, m] : z.multiplicities) ctx.text("  " + to_string(s) + " x" + std::to_string(m) + "\n");
    ctx.text("dots: " + std::to_string(dots) + ", squares: " + std::to_string(squares) +
             ", zigzags of length >= 2: " + std::to_string(zigzags) + "\n");
}

// --------------------------------------------------------------- ddbar

inline void ddbar(Context& ctx) {
    Bicomplex b = bicomplex_of(ctx.pres);
    DdbarEvidence ev = satisfies_ddbar(b);
    if (ctx.job.json) {
        json at = json::array();
        for (Bidegree x : ev.non_injective_at) at.push_back({{"p", x.p}, {"q", x.q}});
        ctx.emit({{"ddbar_lemma", ev.holds}, {"delta", ev.delta}, {"bc_to_aeppli_not_injective_at", at}});
        return;
    }
    ctx.text(std::string("ddbar-lemma: ") + (ev.holds ? "YES" : "NO") + "; Delta = " + render::list(ev.delta) + "\n");
    for (std::size_t k = 0; k < ev.delta.size(); ++k)
        if (ev.delta[k] != 0) ctx.text("  Delta_" + std::to_string(k) + " = " + std::to_string(ev.delta[k]) + "\n");
    if (!ev.non_injective_at.empty()) {
        std::string at;
        for (Bidegree x : ev.non_injective_at) at += " " + bidegree(x);
        ctx.text("H_BC -> H_A not injective at" + at + "\n");
    }
}

// ------------------------------------------------------------ lemma515

inline void lemma515(Context& ctx) {
    Bicomplex b = bicomplex_of(ctx.pres);
    const int top = b.top_degree();
    if (top < 1) fail(ErrorCode::Unsupported, "lemma515 needs total degree at least 1");
    int lo = 1, hi = top;
    if (ctx.job.degree) {
        if (*ctx.job.degree < 1 || *ctx.job.degree > top)
            fail(ErrorCode::SchemaError, "--degree must lie in [1, " + std::to_string(top) + "]");
        lo = hi = *ctx.job.degree;
    }
    std::vector<std::pair<int, Lemma515>> rows;
    for (int k = lo; k <= hi; ++k) rows.emplace_back(k, lemma_515(b, k));
    if (ctx.job.json) {
        json a = json::array();
        for (const auto& [k, l] : rows)
            a.push_back({{"k", k},
                         {"a", l.a},
                         {"b", l.b},
                         {"c", l.c},
                         {"a_star", l.a_star},
                         {"b_star", l.b_star},
                         {"c_star", l.c_star},
                         {"agree", l.all_equal()}});
        ctx.emit({{"degrees", a}});
        return;
    }
    ctx.text("a : ker del & ker delbar & im d = im del delbar          (in A^k)\n"
             "b : ker delbar & im del = im del delbar = ker del & im delbar\n"
             "c : ker del & ker delbar & (im del + im delbar) = im del delbar\n"
             "a*: im del + im delbar + ker d = ker del delbar            (in A^{k-1})\n"
             "b*: im delbar + ker del = ker del delbar = im del + ker delbar\n"
             "c*: im del + im delbar + (ker del & ker delbar) = ker del delbar\n");
    ctx.text(ctx.style.bold(" k  a  b  c  a* b* c*  agree") + "\n");
    auto yn = [](bool v) { return v ? "  Y" : "  N"; };
    for (const auto& [k, l] : rows) {
        char head[8];
        std::snprintf(head, sizeof head, "%2d", k);
        ctx.text(std::string(head) + yn(l.a) + yn(l.b) + yn(l.c) + yn(l.a_star) + yn(l.b_star) + yn(l.c_star) +
                 (l.all_equal() ? "  yes" : "  NO") + "\n");
    }
}

// -------------------------------------------------------------- massey

inline std::vector<std::string> generator_names(const Presentation& p) {
    if (const auto* r = std::get_if<RealPresentation>(&p.data)) return render::real_names(r->g.dim());
    return render::coframe_names(std::get<ComplexCoframe>(p.data).m);
}

/// "d:i,d:i,d:i" with 1-based basis indices, or a JSON array of {"degree", "coords"}.
inline std::vector<CohomologyClass> parse_classes(const std::string& text, const DgaCohomology& h) {
    std::vector<CohomologyClass> out;
    const int top = h.algebra().top_degree();
    if (!text.empty() && text.front() == '[') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            fail(ErrorCode::ParseError, "--classes byte " + std::to_string(e.byte) + ": " + e.what());
        }
        for (std::size_t e = 0; e < j.size(); ++e) {
            const std::string path = "--classes/" + std::to_string(e);
            io::detail::Reader r(j[e], path);
            const int d = static_cast<int>(r.integer("degree", 0, top));
            const json& coords = io::detail::array_at(r.get("coords"), r.child("coords"));
            if (coords.size() != h.at(d).dim())
                fail(ErrorCode::SchemaError, r.child("coords") + ": H^" + std::to_string(d) + " has dimension " +
                                                 std::to_string(h.at(d).dim()));
            CohomologyClass c{d, {}};
            for (std::size_t i = 0; i < coords.size(); ++i)
                c.coords.push_back(io::detail::scalar_at(coords[i], r.child("coords") + "/" + std::to_string(i)));
            r.done();
            out.push_back(std::move(c));
        }
        if (!j.is_array()) fail(ErrorCode::SchemaError, "--classes: expected an array");
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        auto number = [&](const std::string& s) {
            if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
                fail(ErrorCode::ParseError, "--classes: expected 'degree:index', got '" + item + "'");
            return std::stoi(s);
        };
        if (colon == std::string::npos) fail(ErrorCode::ParseError, "--classes: expected 'degree:index', got '" + item + "'");
        const int d = number(item.substr(0, colon)), i = number(item.substr(colon + 1));
        if (d > top) fail(ErrorCode::SchemaError, "--classes: degree " + std::to_string(d) + " exceeds " + std::to_string(top));
        if (i < 1 || static_cast<std::size_t>(i) > h.at(d).dim())
            fail(ErrorCode::SchemaError, "--classes: H^" + std::to_string(d) + " has basis indices 1.." +
                                             std::to_string(h.at(d).dim()));
        out.push_back(h.at(d).basis_class(static_cast<std::size_t>(i - 1)));
    }
    return out;
}

inline std::string class_text(const CohomologyClass& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.coords.size(); ++i) s += (i ? ", " : "") + c.coords[i].str();
    return s + ")";
}

inline void massey(Context& ctx) {
    Dga a = dga_of(ctx.pres);
    DgaCohomology h(a);
    const auto names = generator_names(ctx.pres);
    auto form = [&](const DgaElement& x) { return render::form(a.to_sparse(x), names); };
    auto basis_json = [&](int max_degree) {
        json basis = json::array();
        for (int d = 1; d <= std::min(max_degree, a.top_degree()); ++d) {
            json reps = json::array();
            for (std::size_t i = 0; i < h.at(d).dim(); ++i) reps.push_back(form(h.representative(h.at(d).basis_class(i))));
            basis.push_back({{"degree", d}, {"representatives", reps}});
        }
        return basis;
    };
    auto basis_text = [&](int max_degree) {
        for (int d = 1; d <= std::min(max_degree, a.top_degree()); ++d) {
            ctx.text("H^" + std::to_string(d) + " basis:");
            for (std::size_t i = 0; i < h.at(d).dim(); ++i)
                ctx.text(std::string(i ? "," : "") + " [" + std::to_string(d) + ":" + std::to_string(i + 1) + "] " +
                         form(h.representative(h.at(d).basis_class(i))));
            ctx.text("\n");
        }
    };
    if (ctx.job.classes) {
        std::vector<CohomologyClass> cs = parse_classes(*ctx.job.classes, h);
        MasseyResult r = massey_product(h, cs);
        const int n = cs[0].degree + cs[1].degree + cs[2].degree - 1;
        if (ctx.job.json) {
            json j{{"defined", r.defined}, {"degree", n}};
            json in = json::array();
            for (const auto& c : cs) {
                json coords = json::array();
                for (const auto& x : c.coords) coords.push_back(io::scalar_text(x));
                in.push_back({{"degree", c.degree}, {"coords", coords}});
            }
            j["classes"] = in;
            if (r.defined) {
                json coords = json::array();
                for (const auto& x : r.class_coords) coords.push_back(io::scalar_text(x));
                j["representative"] = form(r.representative);
                j["class"] = coords;
                j["indeterminacy_dim"] = r.indeterminacy.dim();
                j["vanishes"] = r.vanishes;
            }
            ctx.emit(j);
            return;
        }
        basis_text(std::max({cs[0].degree, cs[1].degree, cs[2].degree}));
        std::string args;
        for (const auto& c : cs) args += (args.empty() ? "" : ", ") + form(h.representative(c));
        ctx.text("<[" + args + "]>: ");
        if (!r.defined) {
            ctx.text("not defined (a product of consecutive classes is nonzero)\n");
            return;
        }
        ctx.text("defined\n  representative: " + form(r.representative) + "\n  class in H^" + std::to_string(n) +
                 ": " + class_text({n, r.class_coords}) + "\n  indeterminacy dimension: " +
                 std::to_string(r.indeterminacy.dim()) + "\n  vanishes: " + (r.vanishes ? "yes" : "no") + "\n");
        return;
    }
    const int max_degree = ctx.job.degree.value_or(3);
    if (max_degree < 1) fail(ErrorCode::SchemaError, "--degree must be at least 1");
    std::vector<MasseyWitness> found = massey_scan(h, max_degree);
    if (ctx.job.json) {
        json ws = json::array();
        for (const auto& w : found)
            ws.push_back({{"classes", json::array({{w.d1, w.i1 + 1}, {w.d2, w.i2 + 1}, {w.d3, w.i3 + 1}})},
                          {"representative", form(w.result.representative)},
                          {"indeterminacy_dim", w.result.indeterminacy.dim()}});
        ctx.emit({{"max_degree", max_degree}, {"betti", h.betti()}, {"basis", basis_json(max_degree - 1)}, {"witnesses", ws}});
        return;
    }
    basis_text(max_degree - 1);
    ctx.text("non-vanishing triple Massey products of degree <= " + std::to_string(max_degree) + ": " +
             std::to_string(found.size()) + "\n");
    for (const auto& w : found)
        ctx.text("  <[" + std::to_string(w.d1) + ":" + std::to_string(w.i1 + 1) + "], [" + std::to_string(w.d2) + ":" +
                 std::to_string(w.i2 + 1) + "], [" + std::to_string(w.d3) + ":" + std::to_string(w.i3 + 1) +
                 "]> = [" + form(w.result.representative) + "]\n");
    if (found.empty()) ctx.text("(no obstruction to formality found)\n");
}

// ------------------------------------------------------ central-series

inline void central(Context& ctx) {
    LieAlgebra g = lie_algebra_of(ctx.pres);
    CentralSeries s = central_series(g);
    const bool complexified = std::holds_alternative<ComplexCoframe>(ctx.pres.data);
    if (ctx.job.json) {
        json j{{"dims", s.dims}, {"nilpotent", s.nilpotency_step.has_value()}, {"complexified", complexified}};
        j["nilpotency_step"] = s.nilpotency_step ? json(*s.nilpotency_step) : json(nullptr);
        ctx.emit(j);
        return;
    }
    ctx.text("ascending central series dims" + std::string(complexified ? " (over C)" : "") + ": " +
             render::row(s.dims) + "\n");
    ctx.text(s.nilpotency_step ? "nilpotent, step " + std::to_string(*s.nilpotency_step) + "\n"
                               : std::string("not nilpotent\n"));
}

// -------------------------------------------------------- inequalities

inline void inequalities(Context& ctx) {
    Bicomplex b = bicomplex_of(ctx.pres);
    if (b.P() != b.Q()) fail(ErrorCode::Unsupported, "inequalities need a square box P = Q");
    InequalityReport rep = inequality_suite(b, b.P());
    if (ctx.job.json) {
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"k", r.k},
                            {"h_bc", r.h_bc},
                            {"h_a", r.h_a},
                            {"bc_bound", r.bc_bound},
                            {"a_bound", r.a_bound},
                            {"difference_bound", r.difference_bound},
                            {"bc_ok", r.bc_ok},
                            {"a_ok", r.a_ok},
                            {"difference_ok", r.difference_ok}});
        ctx.emit({{"n", rep.n},
                  {"rows", rows},
                  {"total_difference", rep.total_difference},
                  {"ddbar_lemma", rep.ddbar},
                  {"characterization_ok", rep.characterization_ok},
                  {"all_ok", rep.all_ok()}});
        if (!rep.all_ok()) ctx.result.code = 3;
        return;
    }
    ctx.text("h^k_BC <= m_k (h^k_dbar + h^{k-1}_dbar);  h^k_A <= m_k (h^k_dbar + h^{k+1}_dbar);  m_k = min(k+1, 2n-k+1)\n");
    ctx.text("|h^k_A - h^k_BC| <= 2(n+1)(h^k_dbar + h^{k+1}_dbar);  n = " + std::to_string(rep.n) + "\n");
    ctx.text(ctx.style.bold(" k  h_BC  bound   h_A  bound  |diff|  bound  ok") + "\n");
    for (const auto& r : rep.rows) {
        char line[96];
        const std::size_t diff = r.h_bc > r.h_a ? r.h_bc - r.h_a : r.h_a - r.h_bc;
        std::snprintf(line, sizeof line, "%2d %5zu %6zu %5zu %6zu %7zu %6zu  %s\n", r.k, r.h_bc, r.bc_bound, r.h_a,
                      r.a_bound, diff, r.difference_bound, r.bc_ok && r.a_ok && r.difference_ok ? "yes" : "NO");
        ctx.text(line);
    }
    ctx.text("sum_k |h^k_BC - h^k_A| = " + std::to_string(rep.total_difference) + "; ddbar-lemma: " +
             (rep.ddbar ? "YES" : "NO") + "; characterization " + (rep.characterization_ok ? "holds" : "FAILS") + "\n");
    if (!rep.all_ok()) ctx.result.code = 3;
}

inline std::string error_json(const Error& e) {
    std::string what = e.what();
    const std::string prefix = std::string(to_string(e.code())) + ": ";
    if (what.starts_with(prefix)) what = what.substr(prefix.size());
    return json{{"error", {{"code", std::string(to_string(e.code()))}, {"message", what}}}}.dump(2) + "\n";
}

} // namespace detail

/// Runs one job on an already parsed command line.
inline Outcome execute(const Job& job, bool styled = false) {
    Outcome fail_out;
    try {
        Presentation pres = io::load(job.input);
        detail::Context ctx{job, pres, render::Style{styled && !job.json}, {}};
        const std::string& c = job.command;
        if (c == "validate") detail::validate(ctx);
        else if (c == "cohomology") detail::cohomology(ctx);
        else if (c == "frolicher") detail::frolicher(ctx);
        else if (c == "zigzag") detail::zigzag(ctx);
        else if (c == "ddbar") detail::ddbar(ctx);
        else if (c == "lemma515") detail::lemma515(ctx);
        else if (c == "massey") detail::massey(ctx);
        else if (c == "central-series") detail::central(ctx);
        else if (c == "inequalities") detail::inequalities(ctx);
        else fail(ErrorCode::ParseError, "unknown command '" + c + "'");
        return ctx.result;
    } catch (const Error& e) {
        fail_out.code = exit_code(e.code());
        if (job.json) fail_out.out = detail::error_json(e);
        fail_out.err = std::string("error: ") + e.what() + "\n";
    }
    return fail_out;
}

/// args excludes the program name.
inline Outcome run(const std::vector<std::string>& args, bool styled = false) {
    CLI::App app{"Cohomology of double complexes and nilmanifold Lie algebras.", "bicohom"};
    app.require_subcommand(1, 1);
    Job job;
    int page = 0, degree = 0;
    std::string classes;
    const std::map<std::string, std::string> help{
        {"validate", "check the input and the double complex axioms"},
        {"cohomology", "de Rham, Dolbeault, conjugate Dolbeault, Bott-Chern and Aeppli tables, Delta_k"},
        {"frolicher", "pages of the Frolicher spectral sequence"},
        {"zigzag", "decomposition into dots, squares and zigzags"},
        {"ddbar", "decide the ddbar-lemma"},
        {"lemma515", "the six equivalent exactness conditions in each degree"},
        {"massey", "triple Massey products (one product with --classes, otherwise a scan)"},
        {"central-series", "ascending central series and nilpotency step"},
        {"inequalities", "Bott-Chern and Aeppli bounds in terms of Dolbeault numbers"}};
    for (const std::string& name : commands()) {
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--input", job.input, "JSON file or builtin:<name>")->required();
        sub->add_flag("--json", job.json, "machine-readable output");
        if (name == "frolicher") sub->add_option("--page", page, "show pages E_1..E_r (default: up to degeneration)");
        if (name == "lemma515") sub->add_option("--degree", degree, "only this total degree k");
        if (name == "massey") {
            sub->add_option("--degree", degree, "scan up to this representative degree (default 3)");
            sub->add_option("--classes", classes, "'d:i,d:i,d:i' (1-based basis indices) or a JSON array");
        }
        sub->callback([&job, name, sub, &page, &degree, &classes] {
            job.command = name;
            if (sub->get_option_no_throw("--page") && sub->count("--page")) job.page = page;
            if (sub->get_option_no_throw("--degree") && sub->count("--degree")) job.degree = degree;
            if (sub->get_option_no_throw("--classes") && sub->count("--classes")) job.classes = classes;
        });
    }
    std::vector<std::string> storage{"bicohom"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : storage) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        auto subs = app.get_subcommands();
        return {0, subs.empty() ? app.help() : subs.front()->help(), ""};
    } catch (const CLI::ParseError& e) {
        return {1, "", "error: " + std::string(e.what()) + "\nrun 'bicohom --help' for usage\n"};
    }
    return execute(job, styled);
}

} // namespace bicohom::cli
