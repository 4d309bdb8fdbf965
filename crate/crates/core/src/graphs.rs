//! Generating-function grammar for labelled chordal planar graphs.
//!
//! The chain goes: ternary trees S -> rooted/unrooted chordal triangulations
//! T, U -> networks E (2-connected graphs rooted at a directed edge) ->
//! 2-connected graphs B -> connected graphs C (through the block
//! decomposition) -> all graphs G = e^C. Everything is exact; the counting
//! sequences g_n, c_n, b_n, t_n fall out as n! times EGF coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::lazy::{Dag, NodeId};
use crate::series::{
    binomial, factorial, rat, rat_int, BivariateSeries, Coeff, RatSeries, TruncatedSeries, YPoly,
};

/// Graph families with exact counting support.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphFamily {
    All,
    Connected,
    TwoConnected,
    ThreeConnected,
    TriangulationsUnrooted,
    Networks,
}

impl GraphFamily {
    pub fn name(&self) -> &'static str {
        match self {
            GraphFamily::All => "all",
            GraphFamily::Connected => "connected",
            GraphFamily::TwoConnected => "two_connected",
            GraphFamily::ThreeConnected => "three_connected",
            GraphFamily::TriangulationsUnrooted => "triangulations_unrooted",
            GraphFamily::Networks => "networks",
        }
    }
}

/// Exact counts indexed by vertex (or edge) count.
#[derive(Clone, Debug)]
pub struct CountTable {
    pub family: &'static str,
    pub rows: Vec<(u32, BigInt)>,
}

/// [z^n]S = binom(3n,n)/(2n+1), the ternary-tree closed form.
pub fn ternary_closed_form(n: usize) -> BigRational {
    BigRational::new(binomial(3 * n, n), BigInt::from(2 * n + 1))
}

/// S(z) = z(1+S)^3, cross-checked against the closed form at every order.
pub fn ternary_series(order: usize) -> Result<RatSeries> {
    let mut dag: Dag<BigRational> = Dag::new();
    let s = dag.hole(1);
    let p = dag.one_plus(s);
    let p2 = dag.mul(p, p);
    let p3 = dag.mul(p2, p);
    let rhs = dag.shift(1, p3);
    dag.define(s, rhs);
    let got = dag.series(s, order);
    // The closed form holds for n >= 1; S(0) = 0 is forced by the equation.
    for n in 1..=order {
        if got.coeff(n) != ternary_closed_form(n) {
            return Err(Error::VerificationFailed {
                module: "labelled-graphs".into(),
                invariant: "[z^n]S = binom(3n,n)/(2n+1)".into(),
                order: Some(n),
            });
        }
    }
    Ok(got)
}

/// T(z) = z S(z)/2: chordal triangulations rooted at a directed edge,
/// z marking vertices minus 2.
pub fn rooted_triangulation_series(order: usize) -> Result<RatSeries> {
    Ok(ternary_series(order)?.shift_x(1).scale(&rat(1, 2)))
}

/// U(z) = z^3/24 (S - S^2): unrooted labelled chordal triangulations,
/// z marking all vertices.
pub fn unrooted_triangulation_series(order: usize) -> Result<RatSeries> {
    let s = ternary_series(order)?;
    let s2 = s.mul(&s)?;
    Ok(s.sub(&s2)?.shift_x(3).scale(&rat(1, 24)))
}

/// t_n = binom(n,3) (3n-9)!/(2n-4)!, the number of 3-connected labelled
/// chordal planar graphs (= labelled chordal triangulations) on n vertices.
pub fn count_3connected(n: usize) -> Result<BigInt> {
    if n < 4 {
        return Err(Error::Domain(format!(
            "no 3-connected graph on {n} < 4 vertices"
        )));
    }
    let t = BigRational::new(
        binomial(n, 3) * factorial(3 * n - 9),
        factorial(2 * n - 4),
    );
    debug_assert!(t.is_integer());
    Ok(t.to_integer())
}

/// Handles to the network system solved inside a dag: E and s = S(x·E^3),
/// built around an arbitrary "x" node (valuation >= 1) so the same equations
/// serve both the plain series and compositions like E(C•).
struct NetworkNodes {
    e: NodeId,
    s: NodeId,
    e2: NodeId,
    e3: NodeId,
}

fn build_network<C: Coeff>(dag: &mut Dag<C>, x: NodeId, y: C) -> NetworkNodes {
    let e = dag.hole(0);
    let s = dag.hole(1);
    let e2 = dag.mul(e, e);
    let e3 = dag.mul(e2, e);
    // s = x E^3 (1+s)^3
    let p = dag.one_plus(s);
    let p2 = dag.mul(p, p);
    let p3 = dag.mul(p2, p);
    let e3p3 = dag.mul(e3, p3);
    let s_rhs = dag.mul(x, e3p3);
    dag.define(s, s_rhs);
    // E = y exp(x E^2 (1 + s/2)); the term E^2 s/2 is T(xE^3)/E with the
    // division already carried out.
    let half_s = dag.scale(rat(1, 2), s);
    let inner = dag.one_plus(half_s);
    let e2i = dag.mul(e2, inner);
    let a = dag.mul(x, e2i);
    let expa = dag.exp(a);
    let yc = dag.constant(vec![y]);
    let e_rhs = dag.mul(yc, expa);
    dag.define(e, e_rhs);
    NetworkNodes { e, s, e2, e3 }
}

/// E(x,1): networks with edges unmarked.
pub fn network_series_univariate(order: usize) -> RatSeries {
    let mut dag: Dag<BigRational> = Dag::new();
    let x = dag.constant(vec![rat_int(0), rat_int(1)]);
    let net = build_network(&mut dag, x, rat_int(1));
    dag.series(net.e, order)
}

/// E(x,y): networks, x marking vertices and y edges.
pub fn network_series(order: usize) -> BivariateSeries {
    let mut dag: Dag<YPoly> = Dag::new();
    let x = dag.constant(vec![YPoly::zero(), YPoly::one()]);
    let net = build_network(&mut dag, x, YPoly::y());
    dag.series(net.e, order)
}

/// Adds the node for B(x) = x^2/2 (E - xE^3/12 (s^2 + 5s + 8)) given the
/// network handles; `x` is the same node the network was built around.
fn build_two_connected<C: Coeff>(dag: &mut Dag<C>, x: NodeId, net: &NetworkNodes) -> NodeId {
    let s = net.s;
    let s2 = dag.mul(s, s);
    let five_s = dag.scale(rat_int(5), s);
    let q1 = dag.add(s2, five_s);
    let eight = dag.constant(vec![C::one().scale(&rat_int(8))]);
    let q = dag.add(q1, eight);
    let xe3 = dag.mul(x, net.e3);
    let xe3q = dag.mul(xe3, q);
    let term = dag.scale(rat(1, 12), xe3q);
    let diff = dag.sub(net.e, term);
    let x2 = dag.mul(x, x);
    let x2d = dag.mul(x2, diff);
    dag.scale(rat(1, 2), x2d)
}

/// B(x) = B(x,1) through the dissymmetry closed form.
pub fn two_connected_series_closed(order: usize) -> RatSeries {
    let mut dag: Dag<BigRational> = Dag::new();
    let x = dag.constant(vec![rat_int(0), rat_int(1)]);
    let net = build_network(&mut dag, x, rat_int(1));
    let b = build_two_connected(&mut dag, x, &net);
    dag.series(b, order)
}

/// B(x,y) = (x^2/2) ∫ (E(x,y)/y) dy, the edge-marked 2-connected series.
pub fn two_connected_series_bivariate(order: usize) -> Result<BivariateSeries> {
    let e = network_series(order);
    Ok(e.div_y()?.integrate_y().shift_x(2).scale(&rat(1, 2)))
}

/// Handles to the composed block-decomposition system: Q = C•(x) together
/// with e = E(Q), t = s(Q) and their derivatives in the argument, so that
/// B'(Q) is available without any series composition.
struct PointedNodes {
    q: NodeId,
}

fn build_pointed(dag: &mut Dag<BigRational>) -> PointedNodes {
    let q = dag.hole(1);
    let net = build_network(dag, q, rat_int(1));
    let (e, t, e2, e3) = (net.e, net.s, net.e2, net.e3);
    let one_plus_t = dag.one_plus(t);
    let p2 = dag.mul(one_plus_t, one_plus_t);
    let p3 = dag.mul(p2, one_plus_t);

    // Derivatives of E(u) and s(u) at u = Q, from differentiating
    //   s = u E^3 (1+s)^3,
    //   E = exp(u E^2 (1 + s/2)).
    let e1 = dag.hole(0);
    let t1 = dag.hole(0);

    // s' = E^3(1+s)^3 + u(3E^2 E'(1+s)^3 + 3E^3(1+s)^2 s')
    let e3p3 = dag.mul(e3, p3);
    let e2e1 = dag.mul(e2, e1);
    let a1 = dag.mul(e2e1, p3);
    let a1 = dag.scale(rat_int(3), a1);
    let e3p2 = dag.mul(e3, p2);
    let a2 = dag.mul(e3p2, t1);
    let a2 = dag.scale(rat_int(3), a2);
    let asum = dag.add(a1, a2);
    let qasum = dag.mul(q, asum);
    let t1_rhs = dag.add(e3p3, qasum);
    dag.define(t1, t1_rhs);

    // E' = E (E^2(1+s/2) + u(2E E'(1+s/2) + E^2 s'/2))
    let half_t = dag.scale(rat(1, 2), t);
    let inner = dag.one_plus(half_t);
    let e2i = dag.mul(e2, inner);
    let ee1 = dag.mul(e, e1);
    let b1 = dag.mul(ee1, inner);
    let b1 = dag.scale(rat_int(2), b1);
    let e2t1 = dag.mul(e2, t1);
    let b2 = dag.scale(rat(1, 2), e2t1);
    let bsum = dag.add(b1, b2);
    let qbsum = dag.mul(q, bsum);
    let e1_rhs_inner = dag.add(e2i, qbsum);
    let e1_rhs = dag.mul(e, e1_rhs_inner);
    dag.define(e1, e1_rhs);

    // B'(u) at u = Q, from d/du of the dissymmetry closed form:
    // B' = uE + u^2 E'/2 - (3u^2E^3 + 3u^3E^2E')(s^2+5s+8)/24
    //      - u^3E^3(2s+5)s'/24
    let q2 = dag.mul(q, q);
    let q3 = dag.mul(q2, q);
    let w1 = dag.mul(q, e);
    let q2e1 = dag.mul(q2, e1);
    let w2 = dag.scale(rat(1, 2), q2e1);
    let t2 = dag.mul(t, t);
    let five_t = dag.scale(rat_int(5), t);
    let g1 = dag.add(t2, five_t);
    let eight = dag.constant(vec![rat_int(8)]);
    let g = dag.add(g1, eight);
    let q2e3 = dag.mul(q2, e3);
    let q2e3 = dag.scale(rat_int(3), q2e3);
    let q3e2e1 = dag.mul(q3, e2e1);
    let q3e2e1 = dag.scale(rat_int(3), q3e2e1);
    let c_pre = dag.add(q2e3, q3e2e1);
    let cg = dag.mul(c_pre, g);
    let w3 = dag.scale(rat(1, 24), cg);
    let two_t = dag.scale(rat_int(2), t);
    let five = dag.constant(vec![rat_int(5)]);
    let h = dag.add(two_t, five);
    let q3e3 = dag.mul(q3, e3);
    let q3e3h = dag.mul(q3e3, h);
    let ht1 = dag.mul(q3e3h, t1);
    let w4 = dag.scale(rat(1, 24), ht1);
    let w12 = dag.add(w1, w2);
    let w34 = dag.add(w3, w4);
    let bprime = dag.sub(w12, w34);

    // Q = x e^{B'(Q)}
    let expb = dag.exp(bprime);
    let x = dag.constant(vec![rat_int(0), rat_int(1)]);
    let q_rhs = dag.mul(x, expb);
    dag.define(q, q_rhs);
    PointedNodes { q }
}

/// C•(x) = x C'(x) at y = 1, solved through the composed network system.
pub fn connected_pointed_series_univariate(order: usize) -> RatSeries {
    let mut dag: Dag<BigRational> = Dag::new();
    let nodes = build_pointed(&mut dag);
    dag.series(nodes.q, order)
}

/// C(x,1): [x^n]C = [x^n]C•/n.
pub fn connected_series_univariate(order: usize) -> RatSeries {
    let pointed = connected_pointed_series_univariate(order);
    let mut c = RatSeries::zero(order);
    for n in 1..=order {
        c.set_coeff(n, pointed.coeff(n) / rat_int(n as i64));
    }
    c
}

/// G(x,1) = e^{C(x,1)}.
pub fn all_graphs_series_univariate(order: usize) -> Result<RatSeries> {
    connected_series_univariate(order).exp()
}

/// Bivariate C•(x,y), solved by substituting into B'(x,y) directly.
/// Composition makes this quadratic-order expensive; intended for the
/// moderate orders where the y-profiles are inspected.
pub fn connected_pointed_series(order: usize) -> Result<BivariateSeries> {
    // B' to order N needs B to order N+1.
    let bprime = two_connected_series_bivariate(order + 1)?
        .derivative_x()
        .scale(&rat_int(1));
    let x = BivariateSeries::x(order);
    crate::series::solve_fixed_point(order, YPoly::zero(), |cand| {
        let sub = TruncatedSeries::compose(&bprime, cand)?;
        x.mul(&sub.exp()?)
    })
}

/// Bivariate C(x,y).
pub fn connected_series(order: usize) -> Result<BivariateSeries> {
    let pointed = connected_pointed_series(order)?;
    let mut c = BivariateSeries::zero(order);
    for n in 1..=order {
        c.set_coeff(n, pointed.coeff(n).div_int(n as u64));
    }
    Ok(c)
}

/// Bivariate G(x,y) = e^{C(x,y)}.
pub fn all_graphs_series(order: usize) -> Result<BivariateSeries> {
    connected_series(order)?.exp()
}

/// Exact counting table for a graph family, n = 1..=n_max.
pub fn count_table(family: GraphFamily, n_max: usize) -> Result<CountTable> {
    let rows: Vec<(u32, BigInt)> = match family {
        GraphFamily::All => {
            let g = all_graphs_series_univariate(n_max)?;
            (1..=n_max)
                .map(|n| Ok((n as u32, g.egf_count(n)?)))
                .collect::<Result<_>>()?
        }
        GraphFamily::Connected => {
            let c = connected_series_univariate(n_max);
            (1..=n_max)
                .map(|n| Ok((n as u32, c.egf_count(n)?)))
                .collect::<Result<_>>()?
        }
        GraphFamily::TwoConnected => {
            let b = two_connected_series_closed(n_max);
            (1..=n_max)
                .map(|n| Ok((n as u32, b.egf_count(n)?)))
                .collect::<Result<_>>()?
        }
        GraphFamily::ThreeConnected => (1..=n_max)
            .map(|n| {
                let t = if n < 4 {
                    BigInt::from(0)
                } else {
                    count_3connected(n)?
                };
                Ok((n as u32, t))
            })
            .collect::<Result<_>>()?,
        GraphFamily::TriangulationsUnrooted => {
            let u = unrooted_triangulation_series(n_max)?;
            (1..=n_max)
                .map(|n| Ok((n as u32, u.egf_count(n)?)))
                .collect::<Result<_>>()?
        }
        GraphFamily::Networks => {
            let e = network_series_univariate(n_max);
            (1..=n_max)
                .map(|n| Ok((n as u32, e.egf_count(n)?)))
                .collect::<Result<_>>()?
        }
    };
    Ok(CountTable {
        family: family.name(),
        rows,
    })
}

/// The printed x^5-bracket of G(x,y) in the source material does not row-sum
/// to g_5; this report carries what the grammar actually computes next to
/// the printed bracket so callers can flag the discrepancy explicitly.
#[derive(Clone, Debug)]
pub struct ProfileReport {
    /// Computed coefficients of y^9..y^0 in 5!·[x^5]G(x,y).
    pub computed: Vec<BigInt>,
    /// Printed coefficients of y^9..y^0.
    pub printed: Vec<BigInt>,
    pub computed_sum: BigInt,
    pub printed_sum: BigInt,
    /// Exponents of y where computed and printed disagree.
    pub mismatched_exponents: Vec<usize>,
}

pub fn g5_profile_report() -> Result<ProfileReport> {
    let g = all_graphs_series(5)?;
    let poly = g.coeff(5);
    let fact = BigRational::from_integer(factorial(5));
    let computed: Vec<BigInt> = (0..=9)
        .rev()
        .map(|e| {
            let c = poly.coeff(e) * &fact;
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect();
    let printed: Vec<BigInt> = [10, 30, 90, 140, 180, 195, 1, 45, 10, 1]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
    let computed_sum: BigInt = computed.iter().sum();
    let printed_sum: BigInt = printed.iter().sum();
    let mismatched_exponents = (0..=9usize)
        .filter(|&i| computed[9 - i] != printed[9 - i])
        .collect();
    Ok(ProfileReport {
        computed,
        printed,
        computed_sum,
        printed_sum,
        mismatched_exponents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;

    #[test]
    fn ternary_matches_closed_form() {
        let s = ternary_series(8).unwrap();
        assert_eq!(s.coeff(0), rat_int(0));
        assert_eq!(s.coeff(1), rat_int(1));
        assert_eq!(s.coeff(4), rat_int(55));
    }

    #[test]
    fn rooted_triangulations_prefix() {
        let t = rooted_triangulation_series(4).unwrap();
        assert_eq!(t.coeff(1), rat_int(0));
        assert_eq!(t.coeff(2), rat(1, 2));
        assert_eq!(t.coeff(3), rat(3, 2));
    }

    #[test]
    fn unrooted_triangulation_counts() {
        let u = unrooted_triangulation_series(6).unwrap();
        assert_eq!(u.egf_count(3).unwrap(), BigInt::from(0));
        assert_eq!(u.egf_count(4).unwrap(), BigInt::from(1));
        assert_eq!(u.egf_count(5).unwrap(), BigInt::from(10));
        assert_eq!(u.egf_count(6).unwrap(), count_3connected(6).unwrap());
    }

    #[test]
    fn three_connected_formula() {
        assert_eq!(count_3connected(4).unwrap(), BigInt::from(1));
        assert_eq!(count_3connected(5).unwrap(), BigInt::from(10));
        assert_eq!(count_3connected(6).unwrap(), BigInt::from(180));
        assert!(count_3connected(3).is_err());
    }

    #[test]
    fn network_prefix_univariate() {
        let e = network_series_univariate(3);
        assert_eq!(e.coeff(0), rat_int(1));
        assert_eq!(e.coeff(1), rat_int(1));
        assert_eq!(e.coeff(2), rat_int(3));
    }

    #[test]
    fn network_prefix_bivariate() {
        let e = network_series(2);
        assert_eq!(e.coeff(0), YPoly::y());
        // [x^1]E = y^3
        let mut y3 = vec![rat_int(0); 4];
        y3[3] = rat_int(1);
        assert_eq!(e.coeff(1), YPoly::new(y3));
        // [x^2]E = y^6/2 + 5y^5/2
        let mut c2 = vec![rat_int(0); 7];
        c2[6] = rat(1, 2);
        c2[5] = rat(5, 2);
        assert_eq!(e.coeff(2), YPoly::new(c2));
    }

    #[test]
    fn two_connected_counts() {
        let b = two_connected_series_closed(10);
        assert_eq!(b.egf_count(2).unwrap(), BigInt::from(1));
        assert_eq!(b.egf_count(4).unwrap(), BigInt::from(7));
        assert_eq!(b.egf_count(5).unwrap(), BigInt::from(110));
        assert_eq!(
            b.egf_count(10).unwrap(),
            BigInt::from(24223100940u64)
        );
    }

    #[test]
    fn two_connected_bivariate_profiles() {
        let b = two_connected_series_bivariate(5).unwrap();
        // [x^3]B = y^3/6
        let mut c3 = vec![rat_int(0); 4];
        c3[3] = rat(1, 6);
        assert_eq!(b.coeff(3), YPoly::new(c3));
        // [x^4]B = y^6/24 + y^5/4
        let mut c4 = vec![rat_int(0); 7];
        c4[6] = rat(1, 24);
        c4[5] = rat(1, 4);
        assert_eq!(b.coeff(4), YPoly::new(c4));
        // [x^5]B = y^9/12 + y^8/4 + 7y^7/12
        let mut c5 = vec![rat_int(0); 10];
        c5[9] = rat(1, 12);
        c5[8] = rat(1, 4);
        c5[7] = rat(7, 12);
        assert_eq!(b.coeff(5), YPoly::new(c5));
    }

    #[test]
    fn dissymmetry_consistency_small() {
        let n = 16;
        let closed = two_connected_series_closed(n);
        let via_integral = two_connected_series_bivariate(n).unwrap().at_y_one();
        assert_eq!(closed, via_integral);
    }

    #[test]
    fn connected_counts() {
        let c = connected_series_univariate(8);
        assert_eq!(c.egf_count(1).unwrap(), BigInt::from(1));
        assert_eq!(c.egf_count(3).unwrap(), BigInt::from(4));
        assert_eq!(c.egf_count(5).unwrap(), BigInt::from(540));
        assert_eq!(c.egf_count(8).unwrap(), BigInt::from(22189056u64));
    }

    #[test]
    fn pointed_bivariate_matches_univariate() {
        let n = 7;
        let biv = connected_pointed_series(n).unwrap().at_y_one();
        let uni = connected_pointed_series_univariate(n);
        assert_eq!(biv, uni);
        assert_eq!(biv.coeff(1), rat_int(1));
    }

    #[test]
    fn all_graphs_counts_and_profile() {
        let g = all_graphs_series(5).unwrap();
        let g1 = g.at_y_one();
        assert_eq!(g1.egf_count(0).unwrap(), BigInt::from(1));
        assert_eq!(g1.egf_count(4).unwrap(), BigInt::from(61));
        assert_eq!(g1.egf_count(3).unwrap(), BigInt::from(8));
        // y-profile of 4!·[x^4]G: (1,6,12,20,15,6,1) on y^6..y^0
        let p4 = g.coeff(4);
        let fact = BigRational::from_integer(factorial(4));
        let profile: Vec<BigInt> = (0..=6)
            .rev()
            .map(|e| (p4.coeff(e) * &fact).to_integer())
            .collect();
        let expect: Vec<BigInt> = [1, 6, 12, 20, 15, 6, 1]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(profile, expect);
    }

    #[test]
    fn connected_bivariate_x5_profile() {
        let c = connected_series(5).unwrap();
        let p5 = c.coeff(5);
        let fact = BigRational::from_integer(factorial(5));
        let profile: Vec<BigInt> = (4..=9)
            .rev()
            .map(|e| (p5.coeff(e) * &fact).to_integer())
            .collect();
        let expect: Vec<BigInt> = [10, 30, 90, 135, 150, 125]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(profile, expect);
    }

    #[test]
    fn g5_bracket_misprint_is_flagged() {
        let report = g5_profile_report().unwrap();
        // The grammar's row sum matches Table 1 (g_5 = 821); the printed
        // bracket does not, and the lone mismatch sits at y^3.
        assert_eq!(report.computed_sum, BigInt::from(821));
        assert_eq!(report.printed_sum, BigInt::from(702));
        assert_eq!(report.mismatched_exponents, vec![3]);
        assert_eq!(report.computed[9 - 3], BigInt::from(120));
    }

    #[test]
    fn count_table_matches_reference() {
        let n = 9;
        let g = count_table(GraphFamily::All, n).unwrap();
        let c = count_table(GraphFamily::Connected, n).unwrap();
        let b = count_table(GraphFamily::TwoConnected, n).unwrap();
        for k in 1..=n {
            assert_eq!(g.rows[k - 1].1, tables::graph_all(k));
            assert_eq!(c.rows[k - 1].1, tables::graph_connected(k));
            assert_eq!(b.rows[k - 1].1, tables::graph_two_connected(k));
        }
        let t = count_table(GraphFamily::ThreeConnected, 6).unwrap();
        assert_eq!(t.rows[5].1, BigInt::from(180));
    }
}
