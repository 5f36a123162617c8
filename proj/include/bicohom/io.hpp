#pragma once

// JSON input files (schema/bicohom.schema.json) and their serialization.
// Indices in files are 1-based; scalars are strings "n/d" or "a/b+c/d i".

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "catalog.hpp"

namespace bicohom::io {

using nlohmann::json;

inline constexpr int schema_version = 1;

/// Always "n/d"; Gaussian rationals as "a/b+c/d i" (real part omitted when zero).
inline std::string rational_text(const Rational& r) {
    return r.numerator().get_str() + "/" + r.denominator().get_str();
}

inline std::string scalar_text(const Scalar& s) {
    if (s.is_real()) return rational_text(s.re());
    std::string imag = rational_text(s.im()) + " i";
    if (s.re().is_zero()) return imag;
    return rational_text(s.re()) + (s.im().sign() > 0 ? "+" : "") + imag;
}

namespace detail {

/// A JSON object read with a path for messages; unknown keys are rejected by done().
class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(ErrorCode::SchemaError, where() + "expected an object");
    }

    const json& get(const std::string& key) {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) fail(ErrorCode::SchemaError, where() + "missing key \"" + key + "\"");
        return *it;
    }
    const json* find(const std::string& key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }
    std::string child(const std::string& key) const { return path_ + "/" + key; }

    long integer(const std::string& key, long lo, long hi) { return integer_at(get(key), child(key), lo, hi); }
    bool boolean(const std::string& key, bool fallback) {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_boolean()) fail(ErrorCode::SchemaError, child(key) + ": expected true or false");
        return v->get<bool>();
    }
    std::string string(const std::string& key) {
        const json& v = get(key);
        if (!v.is_string()) fail(ErrorCode::SchemaError, child(key) + ": expected a string");
        return v.get<std::string>();
    }

    void done() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) fail(ErrorCode::SchemaError, where() + "unknown key \"" + it.key() + "\"");
    }

    static long integer_at(const json& v, const std::string& path, long lo, long hi) {
        if (!v.is_number_integer()) fail(ErrorCode::SchemaError, path + ": expected an integer");
        const long x = v.get<long>();
        if (x < lo || x > hi)
            fail(ErrorCode::SchemaError, path + ": " + std::to_string(x) + " is outside [" + std::to_string(lo) + ", " +
                                             std::to_string(hi) + "]");
        return x;
    }

private:
    std::string where() const { return (path_.empty() ? std::string("/") : path_) + ": "; }
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

inline const json& array_at(const json& v, const std::string& path) {
    if (!v.is_array()) fail(ErrorCode::SchemaError, path + ": expected an array");
    return v;
}

inline Scalar scalar_at(const json& v, const std::string& path) {
    if (!v.is_string()) fail(ErrorCode::SchemaError, path + ": expected a string scalar such as \"1/2\" or \"0/1+1/1 i\"");
    try {
        return Scalar::parse(v.get<std::string>());
    } catch (const Error& e) {
        fail(ErrorCode::ParseError, path + ": " + e.what());
    }
}

inline QMatrix matrix_at(const json& v, const std::string& path, std::size_t rows, std::size_t cols) {
    array_at(v, path);
    if (v.size() != rows)
        fail(ErrorCode::SchemaError, path + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(v.size()));
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string rp = path + "/" + std::to_string(i);
        array_at(v[i], rp);
        if (v[i].size() != cols)
            fail(ErrorCode::SchemaError, rp + ": expected " + std::to_string(cols) + " entries, got " + std::to_string(v[i].size()));
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar_at(v[i][j], rp + "/" + std::to_string(j));
    }
    return m;
}

inline json matrix_json(const QMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_text(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline constexpr long max_real_dim = 24;
inline constexpr long max_complex_dim = 12;
inline constexpr long max_box = 32;
inline constexpr long max_cell_dim = 4096;

inline RealPresentation parse_real(Reader& r) {
    const int n = static_cast<int>(r.integer("n", 0, max_real_dim));
    RealPresentation pres{LieAlgebra(n), std::nullopt};
    const json& brackets = array_at(r.get("brackets"), r.child("brackets"));
    std::set<std::tuple<long, long, long>> seen;
    for (std::size_t e = 0; e < brackets.size(); ++e) {
        const std::string path = r.child("brackets") + "/" + std::to_string(e);
        Reader b(brackets[e], path);
        const long i = b.integer("i", 1, n), j = b.integer("j", 1, n), k = b.integer("k", 1, n);
        if (i >= j) fail(ErrorCode::SchemaError, path + ": brackets need i < j");
        if (!seen.insert({i, j, k}).second) fail(ErrorCode::SchemaError, path + ": duplicate structure constant");
        Scalar c = scalar_at(b.get("c"), b.child("c"));
        if (!c.is_real()) fail(ErrorCode::SchemaError, b.child("c") + ": structure constants must be rational");
        b.done();
        pres.g.set(static_cast<int>(i - 1), static_cast<int>(j - 1), static_cast<int>(k - 1), c);
    }
    if (const json* J = r.find("J")) {
        QMatrix m = matrix_at(*J, r.child("J"), static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (std::size_t a = 0; a < m.rows(); ++a)
            for (std::size_t b = 0; b < m.cols(); ++b)
                if (!m(a, b).is_real()) fail(ErrorCode::SchemaError, r.child("J") + ": J must be a rational matrix");
        pres.J = std::move(m);
    }
    return pres;
}

inline ComplexCoframe parse_coframe(Reader& r) {
    ComplexCoframe cf;
    cf.m = static_cast<int>(r.integer("m", 0, max_complex_dim));
    cf.d.resize(static_cast<std::size_t>(cf.m));
    const json& eqs = array_at(r.get("d"), r.child("d"));
    std::set<long> ks;
    for (std::size_t e = 0; e < eqs.size(); ++e) {
        const std::string path = r.child("d") + "/" + std::to_string(e);
        Reader eq(eqs[e], path);
        const long k = eq.integer("k", 1, cf.m);
        if (!ks.insert(k).second) fail(ErrorCode::SchemaError, path + ": second equation for d(phi^" + std::to_string(k) + ")");
        const json& terms = array_at(eq.get("terms"), eq.child("terms"));
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const std::string tp = eq.child("terms") + "/" + std::to_string(t);
            Reader term(terms[t], tp);
            CoframeTerm ct;
            ct.i = static_cast<int>(term.integer("i", 1, cf.m)) - 1;
            ct.j = static_cast<int>(term.integer("j", 1, cf.m)) - 1;
            ct.bar_i = term.boolean("bar_i", false);
            ct.bar_j = term.boolean("bar_j", false);
            ct.c = scalar_at(term.get("c"), term.child("c"));
            term.done();
            if (ct.i == ct.j && ct.bar_i == ct.bar_j) fail(ErrorCode::SchemaError, tp + ": a 1-form wedged with itself");
            cf.d[static_cast<std::size_t>(k - 1)].push_back(ct);
        }
        eq.done();
    }
    return cf;
}

inline Bicomplex parse_bicomplex(Reader& r) {
    const int P = static_cast<int>(r.integer("P", 0, max_box)), Q = static_cast<int>(r.integer("Q", 0, max_box));
    const json& dims = array_at(r.get("dims"), r.child("dims"));
    if (dims.size() != static_cast<std::size_t>(P + 1))
        fail(ErrorCode::SchemaError, r.child("dims") + ": expected P+1 = " + std::to_string(P + 1) + " rows indexed by p");
    std::vector<std::size_t> flat;
    for (int p = 0; p <= P; ++p) {
        const std::string rp = r.child("dims") + "/" + std::to_string(p);
        const json& row = array_at(dims[static_cast<std::size_t>(p)], rp);
        if (row.size() != static_cast<std::size_t>(Q + 1))
            fail(ErrorCode::SchemaError, rp + ": expected Q+1 = " + std::to_string(Q + 1) + " entries indexed by q");
        for (int q = 0; q <= Q; ++q)
            flat.push_back(static_cast<std::size_t>(
                Reader::integer_at(row[static_cast<std::size_t>(q)], rp + "/" + std::to_string(q), 0, max_cell_dim)));
    }
    Bicomplex b(P, Q, flat);
    // each map is a list of {"p","q","matrix"}; absent maps are zero
    auto maps = [&](const std::string& key, int dp, int dq, auto&& store) {
        const json* list = r.find(key);
        if (!list) return;
        array_at(*list, r.child(key));
        std::set<std::pair<long, long>> seen;
        for (std::size_t e = 0; e < list->size(); ++e) {
            const std::string path = r.child(key) + "/" + std::to_string(e);
            Reader m((*list)[e], path);
            const long p = m.integer("p", 0, P), q = m.integer("q", 0, Q);
            if (!seen.insert({p, q}).second) fail(ErrorCode::SchemaError, path + ": second matrix at the same bidegree");
            const int tp = dp < 0 ? static_cast<int>(q) : static_cast<int>(p) + dp;
            const int tq = dp < 0 ? static_cast<int>(p) : static_cast<int>(q) + dq;
            QMatrix mat = matrix_at(m.get("matrix"), m.child("matrix"), b.dim(tp, tq), b.dim(static_cast<int>(p), static_cast<int>(q)));
            m.done();
            store(static_cast<int>(p), static_cast<int>(q), std::move(mat));
        }
    };
    maps("del", 1, 0, [&](int p, int q, QMatrix m) { b.set_del(p, q, std::move(m)); });
    maps("delbar", 0, 1, [&](int p, int q, QMatrix m) { b.set_delbar(p, q, std::move(m)); });
    if (r.find("conj")) {
        if (P != Q) fail(ErrorCode::SchemaError, r.child("conj") + ": a real structure needs P = Q");
        std::vector<QMatrix> sigma(b.cell_count());
        for (int p = 0; p <= P; ++p)
            for (int q = 0; q <= Q; ++q) sigma[b.index(p, q)] = QMatrix(b.dim(q, p), b.dim(p, q));
        std::vector<bool> given(b.cell_count(), false);
        maps("conj", -1, 0, [&](int p, int q, QMatrix m) {
            sigma[b.index(p, q)] = std::move(m);
            given[b.index(p, q)] = true;
        });
        for (int p = 0; p <= P; ++p)
            for (int q = 0; q <= Q; ++q)
                if (!given[b.index(p, q)] && b.dim(p, q) > 0)
                    fail(ErrorCode::SchemaError, r.child("conj") + ": missing sigma at (" + std::to_string(p) + "," +
                                                     std::to_string(q) + ")");
        b.set_conj(std::move(sigma));
    }
    return b;
}

} // namespace detail

inline Presentation from_json(const json& j) {
    detail::Reader r(j, "");
    const long version = r.integer("schema_version", 0, 1 << 20);
    if (version != schema_version)
        fail(ErrorCode::SchemaError, "/schema_version: unsupported version " + std::to_string(version) + " (expected " +
                                         std::to_string(schema_version) + ")");
    const std::string type = r.string("type");
    Presentation pres;
    if (type == "real") pres.data = detail::parse_real(r);
    else if (type == "coframe") pres.data = detail::parse_coframe(r);
    else if (type == "bicomplex") pres.data = detail::parse_bicomplex(r);
    else fail(ErrorCode::SchemaError, "/type: expected \"real\", \"coframe\" or \"bicomplex\", got \"" + type + "\"");
    r.done();
    return pres;
}

inline Presentation parse(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::ParseError, "byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return from_json(j);
}

/// "builtin:<name>" or a file path.
inline Presentation load(const std::string& input) {
    if (input.starts_with("builtin:")) return builtin(std::string_view(input).substr(8));
    std::ifstream in(input, std::ios::binary);
    if (!in) fail(ErrorCode::ParseError, "cannot open input file '" + input + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str());
}

inline json to_json(const Presentation& pres) {
    json j;
    j["schema_version"] = schema_version;
    if (const auto* r = std::get_if<RealPresentation>(&pres.data)) {
        const int n = r->g.dim();
        j["type"] = "real";
        j["n"] = n;
        json brackets = json::array();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int k = 0; k < n; ++k)
                    if (!r->g.c(a, b, k).is_zero())
                        brackets.push_back({{"i", a + 1}, {"j", b + 1}, {"k", k + 1}, {"c", scalar_text(r->g.c(a, b, k))}});
        j["brackets"] = std::move(brackets);
        if (r->J) j["J"] = detail::matrix_json(*r->J);
    } else if (const auto* cf = std::get_if<ComplexCoframe>(&pres.data)) {
        j["type"] = "coframe";
        j["m"] = cf->m;
        json eqs = json::array();
        for (int k = 0; k < cf->m; ++k) {
            const auto& terms = cf->d[static_cast<std::size_t>(k)];
            if (terms.empty()) continue;
            json ts = json::array();
            for (const CoframeTerm& t : terms) {
                json tj{{"i", t.i + 1}, {"j", t.j + 1}, {"bar_j", t.bar_j}, {"c", scalar_text(t.c)}};
                if (t.bar_i) tj["bar_i"] = true;
                ts.push_back(std::move(tj));
            }
            eqs.push_back({{"k", k + 1}, {"terms", std::move(ts)}});
        }
        j["d"] = std::move(eqs);
    } else {
        const Bicomplex& b = std::get<Bicomplex>(pres.data);
        j["type"] = "bicomplex";
        j["P"] = b.P();
        j["Q"] = b.Q();
        json dims = json::array();
        for (int p = 0; p <= b.P(); ++p) {
            json row = json::array();
            for (int q = 0; q <= b.Q(); ++q) row.push_back(b.dim(p, q));
            dims.push_back(std::move(row));
        }
        j["dims"] = std::move(dims);
        json del = json::array(), delbar = json::array();
        for (int p = 0; p <= b.P(); ++p)
            for (int q = 0; q <= b.Q(); ++q) {
                if (p < b.P() && !b.del(p, q).is_zero())
                    del.push_back({{"p", p}, {"q", q}, {"matrix", detail::matrix_json(b.del(p, q))}});
                if (q < b.Q() && !b.delbar(p, q).is_zero())
                    delbar.push_back({{"p", p}, {"q", q}, {"matrix", detail::matrix_json(b.delbar(p, q))}});
            }
        j["del"] = std::move(del);
        j["delbar"] = std::move(delbar);
        if (b.has_conj()) {
            json conj = json::array();
            for (int p = 0; p <= b.P(); ++p)
                for (int q = 0; q <= b.Q(); ++q)
                    if (b.dim(p, q) > 0) conj.push_back({{"p", p}, {"q", q}, {"matrix", detail::matrix_json(b.conj_matrix(p, q))}});
            j["conj"] = std::move(conj);
        }
    }
    return j;
}

} // namespace bicohom::io
