//! Incremental evaluation of systems of series equations.
//!
//! The grammar equations solved in this crate are contractions: the x^n
//! coefficient of each right-hand side only reads coefficients of index < n
//! of the unknowns. Building the right-hand sides as a small dag of nodes
//! and memoizing coefficients lets the whole system be solved coefficient by
//! coefficient, at the cost of a single full evaluation of each product
//! instead of one per pass. This is what makes order-256 solves cheap enough
//! for the coefficient-fit experiments.

use num_rational::BigRational;

use crate::series::{Coeff, TruncatedSeries};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NodeId(usize);

enum Op<C: Coeff> {
    /// Placeholder for a node whose definition is patched in later (cycles).
    Hole,
    /// Fixed coefficients; zero beyond the stored prefix.
    Const(Vec<C>),
    Add(NodeId, NodeId),
    Sub(NodeId, NodeId),
    Mul(NodeId, NodeId),
    /// Multiply by x^k.
    Shift(usize, NodeId),
    /// Multiply every coefficient by a rational scalar.
    Scale(BigRational, NodeId),
    /// exp of a node with valuation >= 1.
    Exp(NodeId),
}

struct Node<C: Coeff> {
    op: Op<C>,
    coeffs: Vec<C>,
    /// Lower bound on the valuation, used to cut convolutions short and to
    /// prove the recursion well-founded.
    val: usize,
    computing: bool,
}

pub struct Dag<C: Coeff> {
    nodes: Vec<Node<C>>,
}

impl<C: Coeff> Dag<C> {
    pub fn new() -> Self {
        Dag { nodes: Vec::new() }
    }

    fn push(&mut self, op: Op<C>, val: usize) -> NodeId {
        self.nodes.push(Node {
            op,
            coeffs: Vec::new(),
            val,
            computing: false,
        });
        NodeId(self.nodes.len() - 1)
    }

    /// A node to be defined later with [`Dag::define`]; `val` is a promised
    /// lower bound on its valuation.
    pub fn hole(&mut self, val: usize) -> NodeId {
        self.push(Op::Hole, val)
    }

    pub fn define(&mut self, id: NodeId, rhs: NodeId) {
        assert!(matches!(self.nodes[id.0].op, Op::Hole));
        // alias: forward coefficients from rhs
        self.nodes[id.0].op = Op::Shift(0, rhs);
    }

    pub fn constant(&mut self, coeffs: Vec<C>) -> NodeId {
        let val = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(usize::MAX);
        self.push(Op::Const(coeffs), val.min(1 << 30))
    }

    pub fn one(&mut self) -> NodeId {
        self.constant(vec![C::one()])
    }

    pub fn add(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let val = self.nodes[a.0].val.min(self.nodes[b.0].val);
        self.push(Op::Add(a, b), val)
    }

    pub fn sub(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let val = self.nodes[a.0].val.min(self.nodes[b.0].val);
        self.push(Op::Sub(a, b), val)
    }

    pub fn mul(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let val = self.nodes[a.0].val.saturating_add(self.nodes[b.0].val);
        self.push(Op::Mul(a, b), val)
    }

    pub fn shift(&mut self, k: usize, a: NodeId) -> NodeId {
        let val = self.nodes[a.0].val.saturating_add(k);
        self.push(Op::Shift(k, a), val)
    }

    pub fn scale(&mut self, r: BigRational, a: NodeId) -> NodeId {
        let val = self.nodes[a.0].val;
        self.push(Op::Scale(r, a), val)
    }

    pub fn exp(&mut self, a: NodeId) -> NodeId {
        assert!(self.nodes[a.0].val >= 1, "exp needs valuation >= 1");
        self.push(Op::Exp(a), 0)
    }

    /// Convenience: 1 + a.
    pub fn one_plus(&mut self, a: NodeId) -> NodeId {
        let one = self.one();
        self.add(one, a)
    }

    pub fn coeff(&mut self, id: NodeId, n: usize) -> C {
        self.ensure(id, n);
        self.nodes[id.0].coeffs[n].clone()
    }

    /// Collect coefficients 0..=order into a truncated series.
    pub fn series(&mut self, id: NodeId, order: usize) -> TruncatedSeries<C> {
        self.ensure(id, order);
        TruncatedSeries::from_coeffs(self.nodes[id.0].coeffs[..=order].to_vec())
    }

    fn ensure(&mut self, id: NodeId, n: usize) {
        while self.nodes[id.0].coeffs.len() <= n {
            let k = self.nodes[id.0].coeffs.len();
            assert!(
                !self.nodes[id.0].computing,
                "cyclic dependency without valuation gain at order {k}"
            );
            self.nodes[id.0].computing = true;
            let c = self.compute(id, k);
            let node = &mut self.nodes[id.0];
            node.computing = false;
            node.coeffs.push(c);
        }
    }

    fn compute(&mut self, id: NodeId, k: usize) -> C {
        if k < self.nodes[id.0].val {
            return C::zero();
        }
        // Copy out the small op descriptor first: recursing re-borrows self.
        enum Desc {
            Add(NodeId, NodeId),
            Sub(NodeId, NodeId),
            Mul(NodeId, NodeId),
            Shift(usize, NodeId),
            Scale(BigRational, NodeId),
            Exp(NodeId),
        }
        let desc = match &self.nodes[id.0].op {
            Op::Hole => panic!("undefined hole node evaluated at order {k}"),
            Op::Const(v) => return v.get(k).cloned().unwrap_or_else(C::zero),
            Op::Add(a, b) => Desc::Add(*a, *b),
            Op::Sub(a, b) => Desc::Sub(*a, *b),
            Op::Mul(a, b) => Desc::Mul(*a, *b),
            Op::Shift(s, a) => Desc::Shift(*s, *a),
            Op::Scale(r, a) => Desc::Scale(r.clone(), *a),
            Op::Exp(a) => Desc::Exp(*a),
        };
        match desc {
            Desc::Add(a, b) => {
                let x = self.coeff(a, k);
                let y = self.coeff(b, k);
                x.add(&y)
            }
            Desc::Sub(a, b) => {
                let x = self.coeff(a, k);
                let y = self.coeff(b, k);
                x.sub(&y)
            }
            Desc::Shift(s, a) => {
                if k < s {
                    C::zero()
                } else {
                    self.coeff(a, k - s)
                }
            }
            Desc::Scale(r, a) => self.coeff(a, k).scale(&r),
            Desc::Mul(a, b) => {
                let (va, vb) = (self.nodes[a.0].val, self.nodes[b.0].val);
                if va.saturating_add(vb) > k {
                    return C::zero();
                }
                self.ensure(a, k - vb);
                self.ensure(b, k - va);
                let mut acc = C::zero();
                for i in va..=(k - vb) {
                    let x = self.nodes[a.0].coeffs[i].clone();
                    if x.is_zero() {
                        continue;
                    }
                    let y = &self.nodes[b.0].coeffs[k - i];
                    if !y.is_zero() {
                        acc = acc.add(&x.mul(y));
                    }
                }
                acc
            }
            Desc::Exp(a) => {
                if k == 0 {
                    return C::one();
                }
                self.ensure(a, k);
                let mut acc = C::zero();
                for j in 1..=k {
                    let w = self.nodes[a.0].coeffs[j].clone();
                    if w.is_zero() {
                        continue;
                    }
                    let f = self.nodes[id.0].coeffs[k - j].clone();
                    if f.is_zero() {
                        continue;
                    }
                    let term = w.mul(&f);
                    acc = acc.add(&term.scale(&BigRational::from_integer(j.into())));
                }
                acc.div_int(k as u64)
            }
        }
    }
}
