use std::sync::Arc;

use num_traits::Zero;

use crate::actions::{Incarnation, Partition};
use crate::data::{DataSet, Domain, Endo};
use crate::error::{Error, Result};
use crate::operators::{validate_seo, Seo};
use crate::rational::Rational;

/// `(Φ, M)` as the coproduct of its blocks.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub blocks: Partition,
    /// `∐ ([psi_b], M)` on the points `b:x`, each block supported on its
    /// own copy of the domain.
    pub coproduct: Arc<Incarnation>,
    /// The isomorphism `Φ → ∐ [psi_b]` placing each measurement on the copy
    /// of its block and zero elsewhere, with `T(g) = ∐ g`.
    pub iso: Seo,
}

pub fn decompose(inc: &Arc<Incarnation>) -> Result<Decomposition> {
    let blocks = inc.blocks();
    let dom = inc.dataset().domain();
    let (n, k) = (dom.len(), blocks.len());
    let points = (0..k).flat_map(|b| dom.points().iter().map(move |x| format!("{b}:{x}")));
    let domain = Arc::new(Domain::new(points)?);
    let mut entries = Vec::with_capacity(inc.dataset().len());
    for (b, members) in blocks.blocks().iter().enumerate() {
        for &phi in members {
            let mut values = vec![Rational::zero(); n * k];
            values[b * n..(b + 1) * n].copy_from_slice(inc.dataset().values(phi));
            entries.push((format!("{b}:{}", inc.dataset().name(phi)), values));
        }
    }
    let data = DataSet::new_allow_empty(domain, entries)?;
    let ops = inc.named_ops().into_iter().map(|(name, g)| {
        let images = (0..k).flat_map(|b| g.images().iter().map(move |&x| b * n + x)).collect();
        (name, Endo::new(images).expect("blockwise copy of an endomorphism"))
    });
    let coproduct = Arc::new(Incarnation::new(data, ops)?);
    let mut alpha = vec![0; inc.dataset().len()];
    for (b, members) in blocks.blocks().iter().enumerate() {
        for &phi in members {
            alpha[phi] = coproduct.dataset().resolve(&format!("{b}:{}", inc.dataset().name(phi)))?;
        }
    }
    let t = (0..inc.op_count()).collect();
    let iso = validate_seo(inc.clone(), coproduct.clone(), alpha, t)?;
    if !iso.is_isomorphism() {
        return Err(Error::Internal("block decomposition is not bijective".into()));
    }
    Ok(Decomposition { blocks, coproduct, iso })
}
