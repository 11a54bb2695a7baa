//! Distance graphs on F_q², their spectra, and the distance coloring.
//!
//! For a non-degenerate form Q and radius a ≠ 0, the distance graph joins
//! x ≠ y whenever Q(x - y) = a. It is a Cayley graph on the additive group
//! of F_q² with connection set {s ≠ 0 : Q(s) = a}, so its eigenvalues can be
//! computed two independent ways: a dense symmetric eigensolver on the
//! adjacency matrix (the ground-truth definition) and additive character
//! sums (the scalable oracle). Both routes must agree as multisets.
//!
//! Coloring K_{q²} by the q - 1 nonzero distances makes every color class
//! one of these graphs; pairs at distance zero stay uncolored.

use crate::bits::BitMatrix;
use crate::field::{FieldCtx, FieldElement};
use crate::geometry::{all_points, sphere, Point, QuadraticForm};
use crate::report::BoundReport;
use crate::{Error, Result};

use nalgebra::DMatrix;
use std::f64::consts::TAU;
use std::io::{self, Write};
use std::sync::Arc;

/// Default cap on vertex count for the dense eigensolver (q ≤ 31).
pub const DEFAULT_DENSE_CAP: usize = 1024;

/// Residual tolerance for the dense symmetric eigensolver.
pub const DENSE_RESIDUAL_TOL: f64 = 1e-8;

/// Tolerance for comparing the two spectrum routes as multisets.
pub const SPECTRUM_AGREEMENT_TOL: f64 = 1e-6;

/// The certified spectral claim 2√q.
pub fn lambda_bound(q: u64) -> f64 {
    2.0 * (q as f64).sqrt()
}

/// The distance graph on F_q² for one form and one nonzero radius.
#[derive(Clone)]
pub struct DistanceGraph {
    field: Arc<FieldCtx>,
    form: QuadraticForm,
    radius: FieldElement,
    connection: Vec<Point>,
    adjacency: BitMatrix,
}

impl DistanceGraph {
    /// Builds adjacency x ~ y ⇔ x ≠ y and Q(x - y) = a. Errors on a = 0
    /// (colors range over nonzero distances only) and on degenerate Q.
    pub fn build(
        field: Arc<FieldCtx>,
        form: QuadraticForm,
        radius: FieldElement,
    ) -> Result<Self> {
        if radius == field.zero() {
            return Err(Error::ZeroRadius);
        }
        let connection = sphere(&field, &form, radius)?;
        let n = (field.q() * field.q()) as usize;
        let mut adjacency = BitMatrix::zeros(n);
        for v in 0..n {
            let pv = Point::from_index(&field, v);
            for &s in &connection {
                adjacency.set(v, pv.add(&field, s).index(&field));
            }
        }
        debug_assert!(connection
            .iter()
            .all(|s| connection.contains(&s.neg(&field))));
        Ok(DistanceGraph {
            field,
            form,
            radius,
            connection,
            adjacency,
        })
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.adjacency.n()
    }

    /// Common vertex degree; the connection-set size q - χ(disc-sign).
    #[inline(always)]
    pub fn valency(&self) -> usize {
        self.connection.len()
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn radius(&self) -> FieldElement {
        self.radius
    }

    pub fn connection_set(&self) -> &[Point] {
        &self.connection
    }

    #[inline(always)]
    pub fn neighbors(&self, v: usize) -> &[u64] {
        self.adjacency.row(v)
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u, v)
    }

    /// Undirected edge count n·d/2.
    pub fn edge_count(&self) -> usize {
        self.n() * self.valency() / 2
    }

    /// Checks that every row has the same popcount and returns it.
    pub fn regular_valency(&self) -> Option<usize> {
        let d = self.adjacency.row_degree(0);
        (1..self.n())
            .all(|v| self.adjacency.row_degree(v) == d)
            .then_some(d)
    }

    /// Eigenvalues from a dense symmetric solve of the adjacency matrix.
    /// This is the ground-truth route; residuals ‖Av - λv‖ are checked
    /// against [`DENSE_RESIDUAL_TOL`].
    pub fn spectrum_dense(&self) -> Result<Spectrum> {
        self.spectrum_dense_with_cap(DEFAULT_DENSE_CAP)
    }

    pub fn spectrum_dense_with_cap(&self, cap: usize) -> Result<Spectrum> {
        let n = self.n();
        if n > cap {
            return Err(Error::DenseCapExceeded { n, cap });
        }
        let a = DMatrix::from_fn(n, n, |i, j| f64::from(u8::from(self.adjacency.get(i, j))));
        let eig = a.clone().symmetric_eigen();
        let residual = (&a * &eig.eigenvectors
            - &eig.eigenvectors * DMatrix::from_diagonal(&eig.eigenvalues))
            .column_iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
        assert!(
            residual <= DENSE_RESIDUAL_TOL,
            "eigensolver residual {residual} above {DENSE_RESIDUAL_TOL}"
        );
        Ok(Spectrum::assemble(
            eig.eigenvalues.iter().copied().collect(),
            self.valency(),
        ))
    }

    /// Eigenvalues from additive character sums: this graph is a Cayley
    /// graph on (F_q², +), so for every m ∈ F_q² the value
    /// Σ_{s ∈ S} cos(2π·Tr(m·s)/p) is an eigenvalue, with m·s the dot
    /// product and Tr the absolute trace. The imaginary parts cancel by
    /// the symmetry of S; the residue is asserted below 1e-10 and dropped.
    pub fn spectrum_characters(&self) -> Spectrum {
        let ctx = &self.field;
        let p = ctx.p();
        let cos_t: Vec<f64> = (0..p).map(|r| (TAU * r as f64 / p as f64).cos()).collect();
        let sin_t: Vec<f64> = (0..p).map(|r| (TAU * r as f64 / p as f64).sin()).collect();
        let mut eigs = Vec::with_capacity(self.n());
        for m in all_points(ctx) {
            let mut re = 0.0;
            let mut im = 0.0;
            for s in &self.connection {
                let dot = ctx.add(ctx.mul(m.x1, s.x1), ctx.mul(m.x2, s.x2));
                let r = ctx.trace(dot) as usize;
                re += cos_t[r];
                im += sin_t[r];
            }
            assert!(
                im.abs() <= 1e-10,
                "character sum has imaginary residue {im}"
            );
            eigs.push(re);
        }
        Spectrum::assemble(eigs, self.valency())
    }

    /// Regularity plus the spectral bound λ ≤ claim, measured on the
    /// character route. Use [`lambda_bound`] for the usual claim 2√q.
    pub fn certify_ndl(&self, lambda_claim: f64) -> BoundReport {
        let regular = self.regular_valency().is_some();
        let spec = self.spectrum_characters();
        let mut report = BoundReport::new(
            format!(
                "spectral_bound q={} radius={}",
                self.field.q(),
                self.radius.index()
            ),
            spec.lambda(),
            lambda_claim,
        );
        report.pass &= regular;
        report
    }

    /// Edge list "u v" per line, u < v, under the fixed vertex enumeration.
    pub fn write_edge_list(&self, w: &mut impl Write) -> io::Result<()> {
        for u in 0..self.n() {
            for v in crate::bits::iter_ones(self.adjacency.row(u)) {
                if u < v {
                    writeln!(w, "{u} {v}")?;
                }
            }
        }
        Ok(())
    }
}

/// The eigenvalue multiset of one graph.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Sorted ascending.
    eigenvalues: Vec<f64>,
    valency: usize,
}

impl Spectrum {
    /// Sorts the eigenvalues and checks the structural invariants: the
    /// principal eigenvalue equals the valency (to 1e-8) and the trace of
    /// the adjacency matrix vanishes (zero diagonal, to 1e-6).
    fn assemble(mut eigenvalues: Vec<f64>, valency: usize) -> Self {
        eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let principal = *eigenvalues.last().expect("nonempty spectrum");
        assert!(
            (principal - valency as f64).abs() <= 1e-8,
            "principal eigenvalue {principal} does not match valency {valency}"
        );
        let sum: f64 = eigenvalues.iter().sum();
        assert!(
            sum.abs() <= 1e-6,
            "eigenvalue sum {sum} should vanish (zero diagonal)"
        );
        Spectrum { eigenvalues, valency }
    }

    /// Eigenvalues sorted ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn valency(&self) -> usize {
        self.valency
    }

    pub fn principal(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// Largest |λ| once a single copy of the principal eigenvalue is
    /// removed. If the graph were disconnected the second copy of the
    /// valency would surface here and fail the spectral bound.
    pub fn lambda(&self) -> f64 {
        let mut lam = 0.0f64;
        for &e in &self.eigenvalues[..self.eigenvalues.len() - 1] {
            lam = lam.max(e.abs());
        }
        lam
    }

    /// Multiset agreement: sorted values pairwise within `tol`.
    pub fn agrees_with(&self, other: &Spectrum, tol: f64) -> bool {
        self.eigenvalues.len() == other.eigenvalues.len()
            && self
                .eigenvalues
                .iter()
                .zip(&other.eigenvalues)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// Clusters eigenvalues within `tol` into (representative, multiplicity)
    /// pairs, ascending. The representative is the cluster mean.
    pub fn multiplicities(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        let mut cluster: Vec<f64> = Vec::new();
        for &e in &self.eigenvalues {
            if let Some(&last) = cluster.last() {
                if e - last > tol {
                    out.push(close_cluster(&cluster));
                    cluster.clear();
                }
            }
            cluster.push(e);
        }
        if !cluster.is_empty() {
            out.push(close_cluster(&cluster));
        }
        out
    }

    /// CSV rows "eigenvalue,multiplicity", clustered at the agreement
    /// tolerance.
    pub fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "eigenvalue,multiplicity")?;
        for (val, mult) in self.multiplicities(SPECTRUM_AGREEMENT_TOL) {
            writeln!(w, "{val:.9},{mult}")?;
        }
        Ok(())
    }
}

fn close_cluster(cluster: &[f64]) -> (f64, usize) {
    let mean = cluster.iter().sum::<f64>() / cluster.len() as f64;
    (mean, cluster.len())
}

/// The coloring of the complete graph on F_q² by the q - 1 nonzero
/// distances: edge (x, y) gets color i ⇔ Q(x - y) = i ≠ 0. Pairs with
/// Q(x - y) = 0 carry no color and are excluded from every colored count.
#[derive(Clone)]
pub struct RegularColoring {
    field: Arc<FieldCtx>,
    form: QuadraticForm,
    /// classes[i - 1] is the graph of color i (nonzero field index i).
    classes: Vec<DistanceGraph>,
    /// Measured λ per class, character route, recorded at build time.
    class_lambda: Vec<f64>,
}

impl RegularColoring {
    pub fn build(field: Arc<FieldCtx>, form: QuadraticForm) -> Result<Self> {
        if form.is_degenerate(&field) {
            return Err(Error::DegenerateForm);
        }
        let mut classes = Vec::with_capacity(field.q() as usize - 1);
        let mut class_lambda = Vec::with_capacity(field.q() as usize - 1);
        for color in field.units() {
            let g = DistanceGraph::build(Arc::clone(&field), form, color)?;
            class_lambda.push(g.spectrum_characters().lambda());
            classes.push(g);
        }
        Ok(RegularColoring {
            field,
            form,
            classes,
            class_lambda,
        })
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn n(&self) -> usize {
        (self.field.q() * self.field.q()) as usize
    }

    pub fn color_class(&self, color: FieldElement) -> Result<&DistanceGraph> {
        if color == self.field.zero() {
            return Err(Error::InvalidColor);
        }
        Ok(&self.classes[color.index() - 1])
    }

    pub fn classes(&self) -> &[DistanceGraph] {
        &self.classes
    }

    /// The shared class valency, if all classes agree (they do whenever the
    /// form is fixed; recorded rather than assumed).
    pub fn common_valency(&self) -> Option<usize> {
        let d = self.classes.first()?.valency();
        self.classes.iter().all(|g| g.valency() == d).then_some(d)
    }

    /// One bound report per class: λ_i ≤ claim.
    pub fn certify(&self, lambda_claim: f64) -> Vec<BoundReport> {
        self.classes
            .iter()
            .zip(&self.class_lambda)
            .map(|(g, &lam)| {
                BoundReport::new(
                    format!(
                        "rc_class_bound q={} color={}",
                        self.field.q(),
                        g.radius().index()
                    ),
                    lam,
                    lambda_claim,
                )
            })
            .collect()
    }

    /// All classes meet λ ≤ claim.
    pub fn is_certified(&self, lambda_claim: f64) -> bool {
        self.certify(lambda_claim).iter().all(|r| r.pass)
    }

    /// Unordered pairs x ≠ y with Q(x - y) = 0, i.e. pairs no color covers.
    pub fn uncolored_pair_count(&self) -> usize {
        let isotropic_nonzero =
            sphere(&self.field, &self.form, self.field.zero()).unwrap().len() - 1;
        self.n() * isotropic_nonzero / 2
    }
}
