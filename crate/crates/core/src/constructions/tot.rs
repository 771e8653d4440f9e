use crate::cdg::{CdgModule, HomElement};
use crate::error::Error;
use crate::graded::GradedModule;
use crate::linalg::Matrix;

/// A finite complex `X^start → X^{start+1} → …` of CDG-modules with closed
/// degree-0 transition maps whose consecutive composites vanish.
#[derive(Clone, Debug)]
pub struct FiniteComplex {
    pub start: i64,
    pub terms: Vec<CdgModule>,
    pub maps: Vec<HomElement>,
}

impl FiniteComplex {
    pub fn new(start: i64, terms: Vec<CdgModule>, maps: Vec<HomElement>) -> Result<Self, Error> {
        if terms.is_empty() {
            return Err(Error::InvalidComplex("a complex needs at least one term".into()));
        }
        if maps.len() + 1 != terms.len() {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} transition maps, found {}",
                terms.len(),
                terms.len() - 1,
                maps.len()
            )));
        }
        for (k, m) in maps.iter().enumerate() {
            let p = start + k as i64;
            if m.source != terms[k] || m.target != terms[k + 1] {
                return Err(Error::InvalidComplex(format!("map at position {p} does not connect its terms")));
            }
            if m.degree != 0 {
                return Err(Error::InvalidComplex(format!("map at position {p} has nonzero degree")));
            }
            if !m.is_closed() {
                return Err(Error::InvalidComplex(format!("map at position {p} is not closed")));
            }
        }
        for k in 1..maps.len() {
            if !(&maps[k].map * &maps[k - 1].map).is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "composite at position {} is not zero",
                    start + k as i64 - 1
                )));
            }
        }
        Ok(Self { start, terms, maps })
    }

    pub fn single(m: CdgModule, position: i64) -> Self {
        Self { start: position, terms: vec![m], maps: Vec::new() }
    }

    pub fn end(&self) -> i64 {
        self.start + self.terms.len() as i64 - 1
    }

    pub fn term(&self, p: i64) -> Option<&CdgModule> {
        if p < self.start || p > self.end() {
            return None;
        }
        self.terms.get((p - self.start) as usize)
    }

    /// Offsets of the summands `X^p[-p]` inside `Tot`, which lists them by decreasing `p`.
    fn offsets(&self) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        let mut offset = 0;
        for p in (self.start..=self.end()).rev() {
            out.push((p, offset));
            offset += self.term(p).expect("in range").dim();
        }
        out
    }

    fn offset_of(&self, p: i64) -> usize {
        self.offsets().into_iter().find(|&(q, _)| q == p).expect("in range").1
    }
}

/// `Tot(X) = ⊕_p X^p[-p]`, summands ordered by decreasing `p`; the internal
/// differential is that of `X^p[-p]` and the transition maps enter with sign +1.
/// For a two-term complex at positions -1, 0 this is literally the cone.
pub fn totalize(x: &FiniteComplex) -> Result<CdgModule, Error> {
    let shifted: Vec<CdgModule> = (x.start..=x.end())
        .rev()
        .map(|p| {
            let m = x.term(p).expect("in range").shift(-p)?;
            Ok(m.with_label_prefix(&format!("p{p}:")))
        })
        .collect::<Result<_, Error>>()?;
    let first = &x.terms[0];
    let modules: Vec<&GradedModule> = shifted.iter().map(CdgModule::module).collect();
    let module = GradedModule::direct_sum(&modules)?;
    first.grading().check_window(module.space().support())?;
    let ds: Vec<&Matrix> = shifted.iter().map(CdgModule::d).collect();
    let mut d = Matrix::block_diagonal(first.field(), &ds);
    for (k, m) in x.maps.iter().enumerate() {
        let p = x.start + k as i64;
        d.set_block(x.offset_of(p + 1), x.offset_of(p), &m.map);
    }
    Ok(CdgModule::from_parts(first.ring().clone(), module, d))
}

/// `Tot` of a morphism of complexes given by components `φ_p: X^p → Y^p`
/// (missing positions are zero). Checks that the components are closed of
/// degree 0 and commute with the transition maps.
pub fn totalize_morphism(
    x: &FiniteComplex,
    y: &FiniteComplex,
    components: &[(i64, Matrix)],
) -> Result<HomElement, Error> {
    let tx = totalize(x)?;
    let ty = totalize(y)?;
    let field = tx.field();
    let component = |p: i64| -> Matrix {
        let (Some(xp), Some(yp)) = (x.term(p), y.term(p)) else {
            let rows = y.term(p).map_or(0, CdgModule::dim);
            let cols = x.term(p).map_or(0, CdgModule::dim);
            return Matrix::zeros(field, rows, cols);
        };
        components
            .iter()
            .find(|(q, _)| *q == p)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| Matrix::zeros(field, yp.dim(), xp.dim()))
    };
    let lo = x.start.min(y.start);
    let hi = x.end().max(y.end());
    for &(p, ref m) in components {
        let (Some(xp), Some(yp)) = (x.term(p), y.term(p)) else {
            if !m.is_zero() {
                return Err(Error::InvalidComplex(format!("component at {p} has no source or target")));
            }
            continue;
        };
        HomElement::new(xp, yp, 0, m.clone())
            .ok()
            .filter(HomElement::is_closed)
            .ok_or_else(|| Error::InvalidComplex(format!("component at {p} is not a closed morphism")))?;
    }
    for p in lo..hi {
        // ∂_Y φ_p = φ_{p+1} ∂_X
        let dx = transition(x, p, field);
        let dy = transition(y, p, field);
        if &dy * &component(p) != &component(p + 1) * &dx {
            return Err(Error::InvalidComplex(format!("components do not commute at position {p}")));
        }
    }
    let mut map = Matrix::zeros(field, ty.dim(), tx.dim());
    for p in x.start.max(y.start)..=x.end().min(y.end()) {
        map.set_block(y.offset_of(p), x.offset_of(p), &component(p));
    }
    Ok(HomElement::from_parts(&tx, &ty, 0, map))
}

fn transition(x: &FiniteComplex, p: i64, field: crate::linalg::Field) -> Matrix {
    let rows = x.term(p + 1).map_or(0, CdgModule::dim);
    let cols = x.term(p).map_or(0, CdgModule::dim);
    if p >= x.start && p < x.end() {
        x.maps[(p - x.start) as usize].map.clone()
    } else {
        Matrix::zeros(field, rows, cols)
    }
}
