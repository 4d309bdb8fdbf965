//! Generating functions for rooted simple chordal planar maps.
//!
//! D(z) is the 2-connected core series with z marking edges minus one; the
//! 2-connected series is B(z) = z·D(z) (z marking all edges), and the
//! all-maps series M solves M = B(z(1+M)^2). These are ordinary generating
//! functions with integer coefficients.

use num_bigint::BigInt;

use crate::error::Result;
use crate::graphs::CountTable;
use crate::lazy::{Dag, NodeId};
use crate::series::{rat_int, RatSeries};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapFamily {
    TwoConnectedMaps,
    AllMaps,
}

impl MapFamily {
    pub fn name(&self) -> &'static str {
        match self {
            MapFamily::TwoConnectedMaps => "two_connected_maps",
            MapFamily::AllMaps => "all_maps",
        }
    }
}

/// Builds the core-map system around an arbitrary "z" node (valuation >= 1):
///   D = 1 + z^2 D^5 (1 + sigma),   sigma = z^3 D^6 (1 + sigma)^3,
/// the divisor-free form of D = 1/(1 - z^2 D^4 (1 + S(z^3 D^6))).
fn build_core(dag: &mut Dag<num_rational::BigRational>, z: NodeId) -> NodeId {
    let d = dag.hole(0);
    let sigma = dag.hole(3);
    let d2 = dag.mul(d, d);
    let d4 = dag.mul(d2, d2);
    let d5 = dag.mul(d4, d);
    let d6 = dag.mul(d4, d2);
    let p = dag.one_plus(sigma);
    let p2 = dag.mul(p, p);
    let p3 = dag.mul(p2, p);
    let z2 = dag.mul(z, z);
    let z3 = dag.mul(z2, z);
    let d6p3 = dag.mul(d6, p3);
    let sigma_rhs = dag.mul(z3, d6p3);
    dag.define(sigma, sigma_rhs);
    let d5p = dag.mul(d5, p);
    let z2d5p = dag.mul(z2, d5p);
    let d_rhs = dag.one_plus(z2d5p);
    dag.define(d, d_rhs);
    d
}

/// D(z): 2-connected simple chordal maps, z marking edges minus 1.
pub fn map_core_series(order: usize) -> RatSeries {
    let mut dag = Dag::new();
    let z = dag.constant(vec![rat_int(0), rat_int(1)]);
    let d = build_core(&mut dag, z);
    dag.series(d, order)
}

/// B(z) = z D(z): 2-connected simple chordal maps, z marking all edges.
pub fn two_connected_maps_series(order: usize) -> RatSeries {
    map_core_series(order).shift_x(1)
}

/// M(z): all simple chordal maps by edges, from M = z(1+M)^2 D(z(1+M)^2).
pub fn all_maps_series(order: usize) -> RatSeries {
    let mut dag = Dag::new();
    let m = dag.hole(1);
    let p = dag.one_plus(m);
    let p2 = dag.mul(p, p);
    let z = dag.constant(vec![rat_int(0), rat_int(1)]);
    let u = dag.mul(z, p2);
    let d = build_core(&mut dag, u);
    let m_rhs = dag.mul(u, d);
    dag.define(m, m_rhs);
    dag.series(m, order)
}

/// Exact counting table for a map family, n = 1..=n_max edges.
pub fn map_count_table(family: MapFamily, n_max: usize) -> Result<CountTable> {
    let series = match family {
        MapFamily::TwoConnectedMaps => two_connected_maps_series(n_max),
        MapFamily::AllMaps => all_maps_series(n_max),
    };
    let rows = (1..=n_max)
        .map(|n| Ok((n as u32, series.ogf_count(n)?)))
        .collect::<Result<Vec<(u32, BigInt)>>>()?;
    Ok(CountTable {
        family: family.name(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;

    #[test]
    fn core_series_prefix() {
        let d = map_core_series(8);
        assert_eq!(d.coeff(0), rat_int(1));
        assert_eq!(d.coeff(2), rat_int(1));
        assert_eq!(d.coeff(8), rat_int(288));
    }

    #[test]
    fn two_connected_prefix_matches_printed_series() {
        // B(z) = z + z^3 + 5z^5 + z^6 + 35z^7 + 16z^8 + 288z^9 + ...
        let b = two_connected_maps_series(9);
        let expect = [0i64, 1, 0, 1, 0, 5, 1, 35, 16, 288];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(b.coeff(n), rat_int(*e));
        }
    }

    #[test]
    fn all_maps_prefix_matches_printed_series() {
        // M(z) = z + 2z^2 + 6z^3 + 22z^4 + 92z^5 + 419z^6 + ...
        let m = all_maps_series(9);
        let expect = [0i64, 1, 2, 6, 22, 92, 419, 2025, 10214, 53192];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(m.coeff(n), rat_int(*e));
        }
    }

    #[test]
    fn tables_match_reference() {
        let m = map_count_table(MapFamily::AllMaps, 20).unwrap();
        let b = map_count_table(MapFamily::TwoConnectedMaps, 20).unwrap();
        for n in 1..=20 {
            assert_eq!(m.rows[n - 1].1, tables::map_all(n));
            assert_eq!(b.rows[n - 1].1, tables::map_two_connected(n));
        }
    }

    #[test]
    fn all_maps_dominate_two_connected() {
        let m = all_maps_series(32);
        let b = two_connected_maps_series(32);
        for n in 0..=32 {
            assert!(m.coeff(n) >= b.coeff(n));
        }
    }
}
