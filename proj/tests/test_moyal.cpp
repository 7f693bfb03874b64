#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "builders.hpp"

using namespace homalg;

namespace {

MoyalConfig plain2() {
    Context ctx{{}, false};
    return MoyalConfig::standard2(ctx);
}

RPoly P2(const std::string& s, const MoyalConfig& cfg) { return parse_rpoly(s, cfg.ring); }

}  // namespace

TEST_CASE("moyal terms against hand-computed derivatives") {
    MoyalConfig cfg = plain2();
    RPoly x = P2("x", cfg), y = P2("y", cfg);
    CHECK(moyal_term(x, y, 0, cfg) == P2("x*y", cfg));
    // mu_1(f,g) = d_x f d_y g for sigma = [[0,1],[0,0]]
    CHECK(moyal_term(x, y, 1, cfg) == P2("1", cfg));
    CHECK(moyal_term(y, x, 1, cfg) == P2("0", cfg));
    CHECK(moyal_term(P2("x^2", cfg), P2("y^2", cfg), 1, cfg) == P2("4*x*y", cfg));
    // mu_2(x^2, y^2) = (1/2) d_x^2(x^2) d_y^2(y^2) = 2
    CHECK(moyal_term(P2("x^2", cfg), P2("y^2", cfg), 2, cfg) == P2("2", cfg));
    CHECK(moyal_term(P2("x^2", cfg), P2("y^2", cfg), 3, cfg).is_zero());
    // degree cap: mu_m vanishes once m exceeds the x-degree of f
    CHECK(moyal_term(P2("x^3*y", cfg), P2("y^4", cfg), 4, cfg).is_zero());
}

TEST_CASE("star product: commutator and antisymmetrized first order") {
    MoyalConfig cfg = plain2();
    RPoly x = P2("x", cfg), y = P2("y", cfg);
    TruncSeries comm = star(x, y, cfg) - star(y, x, cfg);
    CHECK(comm.coeffs[0].is_zero());
    CHECK(comm.coeffs[1] == P2("1", cfg));  // x*y - y*x = t
    for (unsigned p = 2; p <= cfg.order; ++p) CHECK(comm.coeffs[p].is_zero());

    // mu_1(f,g) - mu_1(g,f) equals the standard Poisson bracket on the basis
    Bivector std2{cfg.ring,
                  {{P2("0", cfg), P2("1", cfg)}, {P2("-1", cfg), P2("0", cfg)}}};
    for (const auto& ef : capped_basis(2, 3))
        for (const auto& eg : capped_basis(2, 3)) {
            RPoly f = RPoly::monomial(ef, CoeffExpr::one(0), 2);
            RPoly g = RPoly::monomial(eg, CoeffExpr::one(0), 2);
            CHECK(moyal_term(f, g, 1, cfg) - moyal_term(g, f, 1, cfg) == pbracket(f, g, std2));
        }
}

TEST_CASE("plain star associativity through order 4 on low-degree triples") {
    MoyalConfig cfg = plain2();
    cfg.degree_cap = 4;
    std::vector<Exp> basis = capped_basis(2, cfg.degree_cap);
    for (const auto& ea : basis)
        for (const auto& eb : basis)
            for (const auto& ec : basis) {
                if (exp_degree(ea) + exp_degree(eb) + exp_degree(ec) > 4) continue;
                RPoly f = RPoly::monomial(ea, CoeffExpr::one(0), 2);
                RPoly g = RPoly::monomial(eb, CoeffExpr::one(0), 2);
                RPoly h = RPoly::monomial(ec, CoeffExpr::one(0), 2);
                CHECK(star_associator(f, g, h, cfg).is_zero());
            }
}

TEST_CASE("affine endomorphism intertwines every cochain symbolically") {
    Context ctx{{"a", "b", "c"}, false};
    MoyalConfig cfg = MoyalConfig::standard2(ctx);
    PolyEndo aff{cfg.ring, {P2("a*x + b", cfg), P2("(1/a)*y + c", cfg)}};
    for (unsigned m = 0; m <= 4; ++m) CHECK(intertwine_residual(aff, m, cfg).empty());
    // non-affine maps are caught at the first order with derivatives
    PolyEndo sq{cfg.ring, {P2("x^2", cfg), P2("y", cfg)}};
    CHECK(!intertwine_residual(sq, 1, cfg).empty());
}

TEST_CASE("shift and negate-shift intertwine in three variables") {
    Context ctx{{"b1", "b2", "b3"}, false};
    MoyalConfig cfg;
    cfg.ring = RingContext{ctx, {"x1", "x2", "x3"}};
    cfg.sigma = {{Rat(0), Rat(1), Rat(-1, 2)},
                 {Rat(0), Rat(0), Rat(1)},
                 {Rat(0), Rat(0), Rat(0)}};
    cfg.order = 3;
    cfg.degree_cap = 2;
    auto P = [&](const std::string& s) { return parse_rpoly(s, cfg.ring); };
    PolyEndo shift{cfg.ring, {P("x1 + b1"), P("x2 + b2"), P("x3 + b3")}};
    PolyEndo nshift{cfg.ring, {P("-x1 + b1"), P("-x2 + b2"), P("-x3 + b3")}};
    for (unsigned m = 0; m <= cfg.order; ++m) {
        CHECK(intertwine_residual(shift, m, cfg).empty());
        CHECK(intertwine_residual(nshift, m, cfg).empty());
    }
    // a mixed-sign affine map fails: a_i a_j must be 1 for i != j
    PolyEndo mixed{cfg.ring, {P("-x1"), P("x2"), P("x3")}};
    bool broken = false;
    for (unsigned m = 0; m <= cfg.order && !broken; ++m)
        broken = !intertwine_residual(mixed, m, cfg).empty();
    CHECK(broken);
}

TEST_CASE("twisted star: Hom-associative but not associative") {
    Context ctx{{}, false};
    MoyalConfig cfg = MoyalConfig::standard2(ctx);
    PolyEndo a2{cfg.ring, {P2("2*x + 1", cfg), P2("(1/2)*y + 3", cfg)}};
    RPoly one = P2("1", cfg), y = P2("y", cfg), x = P2("x", cfg);

    // witness triple (1, y, x): plain associativity fails for the twisted star
    TruncSeries lhs = twisted_star_series(
        a2, twisted_star(a2, one, y, cfg), TruncSeries::from_poly(x, cfg.order), cfg);
    TruncSeries rhs = twisted_star_series(
        a2, TruncSeries::from_poly(one, cfg.order), twisted_star(a2, y, x, cfg), cfg);
    CHECK(!(lhs - rhs).is_zero());
    TruncSeries oy = twisted_star(a2, one, y, cfg);
    CHECK(oy.coeffs[0] == P2("(1/2)*y + 3", cfg));
    for (unsigned p = 1; p <= cfg.order; ++p) CHECK(oy.coeffs[p].is_zero());

    // while the Hom-associator vanishes on a degree-capped sweep
    for (const auto& ea : capped_basis(2, 2))
        for (const auto& eb : capped_basis(2, 2))
            for (const auto& ec : capped_basis(2, 2)) {
                RPoly f = RPoly::monomial(ea, CoeffExpr::one(0), 2);
                RPoly g = RPoly::monomial(eb, CoeffExpr::one(0), 2);
                RPoly h = RPoly::monomial(ec, CoeffExpr::one(0), 2);
                CHECK(twisted_star_hom_associator(a2, f, g, h, cfg).is_zero());
            }
}

TEST_CASE("degree-1 families: cochain-built Hom-associator flags family (i)") {
    Context ctx{{"a10", "a01"}, false};
    MoyalConfig cfg = MoyalConfig::standard2(ctx);
    auto P = [&](const std::string& s) { return parse_rpoly(s, cfg.ring); };
    PolyEndo fam1{cfg.ring, {P("a10*x + a01*y"), P("-(1/a01)*x")}};
    CHECK(eq_alpha_residual(fam1).is_zero());
    TruncSeries as = star_hom_associator(fam1, P("x"), P("y"), P("y"), cfg);
    CHECK(as.coeffs[1] == P("y"));  // the printed nonzero witness

    // the affine subfamily (a01 = 0 case shape) vanishes instead
    Context c2{{"a", "b", "c"}, false};
    MoyalConfig cfg2 = MoyalConfig::standard2(c2);
    auto Q = [&](const std::string& s) { return parse_rpoly(s, cfg2.ring); };
    PolyEndo aff{cfg2.ring, {Q("a*x + b"), Q("(1/a)*y + c")}};
    CHECK(star_hom_associator(aff, Q("x"), Q("y"), Q("y"), cfg2).is_zero());
}

TEST_CASE("star_series distributes over series coefficients") {
    MoyalConfig cfg = plain2();
    RPoly x = P2("x", cfg), y = P2("y", cfg);
    TruncSeries F = TruncSeries::from_poly(x, cfg.order);
    F.coeffs[1] = y;  // F = x + y t
    TruncSeries G = TruncSeries::from_poly(y, cfg.order);
    TruncSeries prod = star_series(F, G, cfg);
    // (x + y t) * y = x*y + t(1 + y^2) since x * y = xy + t
    CHECK(prod.coeffs[0] == P2("x*y", cfg));
    CHECK(prod.coeffs[1] == P2("y^2 + 1", cfg));
}
