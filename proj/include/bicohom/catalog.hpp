#pragma once

// Input presentations and the built-in example library.

#include <variant>

#include "lie.hpp"

namespace bicohom {

struct RealPresentation {
    LieAlgebra g;
    std::optional<QMatrix> J;
    friend bool operator==(const RealPresentation&, const RealPresentation&) = default;
};

/// What an input file or builtin resolves to.
struct Presentation {
    std::variant<RealPresentation, ComplexCoframe, Bicomplex> data;

    bool is_lie() const { return !std::holds_alternative<Bicomplex>(data); }
    friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// The double complex of a presentation; real presentations need J.
inline Bicomplex bicomplex_of(const Presentation& pres) {
    if (const auto* r = std::get_if<RealPresentation>(&pres.data)) {
        if (!r->J) fail(ErrorCode::Unsupported, "real presentation without J has no bigrading");
        return build_bicomplex(r->g, *r->J);
    }
    if (const auto* c = std::get_if<ComplexCoframe>(&pres.data)) return build_bicomplex_coframe(*c);
    const Bicomplex& b = std::get<Bicomplex>(pres.data);
    require_valid(b);
    return b;
}

/// The CE algebra carrying the wedge product: the real one for real
/// presentations, the complexified one on (φ, φ̄) for coframes.
inline Dga dga_of(const Presentation& pres) {
    if (const auto* r = std::get_if<RealPresentation>(&pres.data)) return ce_differential(r->g);
    if (const auto* c = std::get_if<ComplexCoframe>(&pres.data)) {
        Dga a(2 * c->m, coframe_generator_forms(*c));
        ensure(a.d_squared_zero(), ErrorCode::InvalidBicomplex, "coframe equations do not satisfy d^2 = 0");
        return a;
    }
    fail(ErrorCode::Unsupported, "a raw bicomplex carries no product");
}

inline LieAlgebra lie_algebra_of(const Presentation& pres) {
    if (const auto* r = std::get_if<RealPresentation>(&pres.data)) return r->g;
    if (const auto* c = std::get_if<ComplexCoframe>(&pres.data)) return lie_algebra_of(*c);
    fail(ErrorCode::Unsupported, "a raw bicomplex is not a Lie algebra");
}

namespace catalog {

inline ComplexCoframe iwasawa() {
    ComplexCoframe cf;
    cf.m = 3;
    cf.d.resize(3);
    cf.d[2].push_back({0, false, 1, false, Scalar(-1)});
    return cf;
}

inline ComplexCoframe torus(int n) {
    ComplexCoframe cf;
    cf.m = n;
    cf.d.resize(static_cast<std::size_t>(n));
    return cf;
}

/// Complex Heisenberg group as a real 6-dimensional algebra with its standard J.
inline RealPresentation iwasawa_real() {
    RealPresentation r{LieAlgebra(6), QMatrix(6, 6)};
    r.g.set(0, 2, 4, 1);
    r.g.set(0, 3, 5, 1);
    r.g.set(1, 2, 5, 1);
    r.g.set(1, 3, 4, -1);
    for (std::size_t a = 0; a < 6; a += 2) {
        (*r.J)(a + 1, a) = 1;
        (*r.J)(a, a + 1) = -1;
    }
    return r;
}

/// h_3 + R with [e1,e2] = e3, Je1 = e2, Je3 = e4.
inline RealPresentation kodaira_thurston() {
    RealPresentation r{LieAlgebra(4), QMatrix(4, 4)};
    r.g.set(0, 1, 2, 1);
    (*r.J)(1, 0) = 1;
    (*r.J)(0, 1) = -1;
    (*r.J)(3, 2) = 1;
    (*r.J)(2, 3) = -1;
    return r;
}

inline RealPresentation heisenberg() {
    RealPresentation r{LieAlgebra(3), std::nullopt};
    r.g.set(0, 1, 2, 1);
    return r;
}

inline constexpr int max_torus = 6;

inline std::string listing() {
    return "iwasawa, iwasawa-real, kodaira-thurston, heisenberg, torus:n (1 <= n <= " + std::to_string(max_torus) + ")";
}

} // namespace catalog

/// Builtins are pinned and checked (Jacobi, and Nijenhuis when J is given) on load.
inline Presentation builtin(std::string_view name) {
    Presentation p;
    if (name == "iwasawa") p.data = catalog::iwasawa();
    else if (name == "iwasawa-real") p.data = catalog::iwasawa_real();
    else if (name == "kodaira-thurston") p.data = catalog::kodaira_thurston();
    else if (name == "heisenberg") p.data = catalog::heisenberg();
    else if (name.starts_with("torus:")) {
        const std::string digits(name.substr(6));
        const bool numeric = !digits.empty() && digits.size() <= 2 &&
                             std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; });
        const int n = numeric ? std::stoi(digits) : 0;
        if (n < 1 || n > catalog::max_torus)
            fail(ErrorCode::UnknownExample, "'" + std::string(name) + "'; catalog: " + catalog::listing());
        p.data = catalog::torus(n);
    } else {
        fail(ErrorCode::UnknownExample, "'" + std::string(name) + "'; catalog: " + catalog::listing());
    }
    if (const auto* r = std::get_if<RealPresentation>(&p.data)) {
        require_jacobi(r->g);
        if (r->J) ensure(nijenhuis(r->g, *r->J).integrable(), ErrorCode::InternalInconsistency, "builtin J is not integrable");
    }
    return p;
}

} // namespace bicohom
