use std::sync::Arc;

use rand::Rng;

use super::{AbelianIdentification, FiniteGroup, Quotient};
use crate::alat::{AbElement, FGAbelianGroup};
use crate::cohomology::TwoCocycle;
use crate::error::{input_err, invariant_err};
use crate::gmodules::GModule;
use crate::{Coord, Result};

/// Element `(c, g)` of an extension in the pair model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    pub c: AbElement,
    pub g: usize,
}

/// `1 -> C -> E -> G0 -> 1` on pairs `(c, g)` with
/// `(c1, g1)(c2, g2) = (c1 + g1.c2 + beta(g1, g2), g1 g2)`.
#[derive(Clone, Debug)]
pub struct GroupExtension {
    beta: TwoCocycle,
}

pub fn build_extension(beta: &TwoCocycle) -> Result<GroupExtension> {
    GroupExtension::new(beta.clone())
}

impl GroupExtension {
    pub fn new(beta: TwoCocycle) -> Result<Self> {
        if !beta.is_normalized() {
            return Err(input_err!("extension cocycle is not normalized"));
        }
        if let Some((a, b, c)) = beta.cocycle_violation() {
            return Err(input_err!("2-cocycle identity fails at ({a}, {b}, {c})"));
        }
        Ok(GroupExtension { beta })
    }

    pub fn beta(&self) -> &TwoCocycle {
        &self.beta
    }

    pub fn kernel(&self) -> &Arc<GModule> {
        self.beta.module()
    }

    pub fn kernel_group(&self) -> &FGAbelianGroup {
        self.beta.module().base()
    }

    pub fn quotient(&self) -> &Arc<FiniteGroup> {
        self.beta.module().group()
    }

    pub fn identity(&self) -> ExtElement {
        ExtElement { c: self.kernel_group().zero(), g: 0 }
    }

    pub fn element(&self, c: AbElement, g: usize) -> Result<ExtElement> {
        if !self.kernel_group().contains(&c) || g >= self.quotient().order() {
            return Err(input_err!("({c}, {g}) is not an element of the extension"));
        }
        Ok(ExtElement { c, g })
    }

    pub fn mul(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        let m = self.kernel();
        let a = m.base();
        let c = a.add(&a.add(&x.c, &m.act(x.g, &y.c)), self.beta.value(x.g, y.g));
        ExtElement { c, g: self.quotient().mul(x.g, y.g) }
    }

    pub fn inv(&self, x: &ExtElement) -> ExtElement {
        let q = self.quotient();
        let gi = q.inv(x.g);
        let a = self.kernel_group();
        let s = a.neg(&a.add(&x.c, self.beta.value(x.g, gi)));
        ExtElement { c: self.kernel().act(gi, &s), g: gi }
    }

    pub fn pow(&self, x: &ExtElement, k: u64) -> ExtElement {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn order(&self) -> Option<u128> {
        self.kernel_group().order().map(|c| c * self.quotient().order() as u128)
    }

    /// Id `g * |C| + index(c)` of a finite extension.
    pub fn element_id(&self, x: &ExtElement) -> usize {
        let a = self.kernel_group();
        x.g * a.finite_order().expect("finite kernel") + a.index_of(&x.c)
    }

    pub fn element_at(&self, id: usize) -> ExtElement {
        let a = self.kernel_group();
        let n = a.finite_order().expect("finite kernel");
        ExtElement { c: a.element_at(id % n), g: id / n }
    }

    pub fn to_finite_group(&self) -> Result<FiniteGroup> {
        let n = self.kernel_group().finite_order()?;
        let total = n * self.quotient().order();
        if total > 4096 {
            return Err(crate::Error::Unsupported(format!("extension of order {total} is too large to tabulate")));
        }
        let elems: Vec<ExtElement> = (0..total).map(|i| self.element_at(i)).collect();
        Ok(FiniteGroup::from_fn(total, |a, b| self.element_id(&self.mul(&elems[a], &elems[b]))))
    }

    /// The tabulated group with its kernel ids `0..|C|`, quotient and
    /// the identification of the kernel with `C`.
    pub fn tabulate(&self) -> Result<(FiniteGroup, Quotient, AbelianIdentification)> {
        let g = self.to_finite_group()?;
        let a = self.kernel_group();
        let n = a.finite_order()?;
        let q = Quotient::new(&g, &(0..n).collect::<Vec<_>>())?;
        let ident = AbelianIdentification::from_pairs(a.clone(), (0..n).map(|i| (i, a.element_at(i))).collect())?;
        Ok((g, q, ident))
    }

    /// All elements `(v, g)` whose free coordinates have absolute value at most `r`.
    pub fn ball(&self, r: Coord) -> Result<Vec<ExtElement>> {
        let vs = ball_elements(self.kernel_group(), r)?;
        let mut out = Vec::with_capacity(vs.len() * self.quotient().order());
        for g in 0..self.quotient().order() {
            for v in &vs {
                out.push(ExtElement { c: v.clone(), g });
            }
        }
        Ok(out)
    }

    pub fn random_element(&self, rng: &mut impl Rng, radius: Coord) -> ExtElement {
        let a = self.kernel_group();
        let coords = (0..a.ncoords())
            .map(|i| match a.modulus(i) {
                0 => rng.gen_range(-radius..=radius),
                d => rng.gen_range(0..d),
            })
            .collect();
        ExtElement { c: a.reduce(coords), g: rng.gen_range(0..self.quotient().order()) }
    }

    /// Associativity on all triples when the group is small and finite,
    /// otherwise on triples of generators and `samples` random triples.
    pub fn check_associativity(&self, rng: &mut impl Rng, samples: usize) -> Result<Option<[ExtElement; 3]>> {
        let assoc = |x: &ExtElement, y: &ExtElement, z: &ExtElement| {
            self.mul(&self.mul(x, y), z) == self.mul(x, &self.mul(y, z))
        };
        if let Some(n) = self.order().filter(|&n| n <= 64) {
            let elems: Vec<ExtElement> = (0..n as usize).map(|i| self.element_at(i)).collect();
            for x in &elems {
                for y in &elems {
                    for z in &elems {
                        if !assoc(x, y, z) {
                            return Ok(Some([x.clone(), y.clone(), z.clone()]));
                        }
                    }
                }
            }
            return Ok(None);
        }
        let mut gens: Vec<ExtElement> = (0..self.kernel_group().ncoords())
            .map(|i| ExtElement { c: self.kernel_group().basis(i), g: 0 })
            .collect();
        gens.extend(self.quotient().generators().into_iter().map(|g| ExtElement { c: self.kernel_group().zero(), g }));
        for x in &gens {
            for y in &gens {
                for z in &gens {
                    if !assoc(x, y, z) {
                        return Ok(Some([x.clone(), y.clone(), z.clone()]));
                    }
                }
            }
        }
        for _ in 0..samples {
            let t = [self.random_element(rng, 5), self.random_element(rng, 5), self.random_element(rng, 5)];
            if !assoc(&t[0], &t[1], &t[2]) {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }
}

/// Elements of `a` with free coordinates in `[-r, r]`.
pub(crate) fn ball_elements(a: &FGAbelianGroup, r: Coord) -> Result<Vec<AbElement>> {
    if r < 0 {
        return Err(input_err!("negative ball radius"));
    }
    let ranges: Vec<(Coord, Coord)> =
        (0..a.ncoords()).map(|i| if a.modulus(i) == 0 { (-r, r) } else { (0, a.modulus(i) - 1) }).collect();
    let size: u128 = ranges.iter().map(|&(lo, hi)| (hi - lo + 1) as u128).product();
    if size > 1 << 22 {
        return Err(crate::Error::Unsupported(format!("ball of {size} elements is too large")));
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut v: Vec<Coord> = ranges.iter().map(|r| r.0).collect();
    'odometer: loop {
        out.push(AbElement::from_raw(v.clone()));
        let mut i = v.len();
        loop {
            if i == 0 {
                break 'odometer;
            }
            i -= 1;
            if v[i] < ranges[i].1 {
                v[i] += 1;
                break;
            }
            v[i] = ranges[i].0;
        }
    }
    Ok(out)
}

/// Elements of the acting group that fix every element of the module.
pub fn kernel_of_action(m: &GModule) -> Vec<usize> {
    (0..m.group().order()).filter(|&g| m.acts_trivially(g)).collect()
}

/// Elements of the extension in the kernel of the action through `G0`:
/// the pairs `(c, g)` with `g` in the returned subgroup of `G0`.
pub fn extension_action_kernel(ext: &GroupExtension, m: &GModule) -> Result<Vec<usize>> {
    if !Arc::ptr_eq(ext.quotient(), m.group()) && **ext.quotient() != **m.group() {
        return Err(invariant_err!("module is over a different group"));
    }
    Ok(kernel_of_action(m))
}
