use super::{Cell, CubeSpec, CubicalError, PresentedCubicalSet, Result};
use crate::exactalg::Chain;

/// Separator joining factor labels in a product presentation.
pub const PRODUCT_SEPARATOR: &str = "×";

fn pair_label(a: &str, b: &str) -> String {
    format!("{a}{PRODUCT_SEPARATOR}{b}")
}

/// The product presentation `X × Y`: one `(p+q)`-cube per pair of cubes,
/// with faces `1..=p` acting on the first block of coordinates and faces
/// `p+1..=p+q` on the second.
pub fn product(x: &PresentedCubicalSet, y: &PresentedCubicalSet) -> PresentedCubicalSet {
    let mut cubes = Vec::with_capacity(x.len() * y.len());
    for a in x.cubes() {
        for b in y.cubes() {
            let p = a.dim;
            let mut faces = Vec::with_capacity(a.dim + b.dim);
            for pair in &a.faces {
                faces.push(pair.clone().map(|f| Cell::degenerate(pair_label(&f.base, &b.label), f.collapsed)));
            }
            for pair in &b.faces {
                faces.push(
                    pair.clone().map(|f| Cell::degenerate(pair_label(&a.label, &f.base), f.collapsed.iter().map(|j| j + p).collect())),
                );
            }
            cubes.push(CubeSpec { label: pair_label(&a.label, &b.label), dim: a.dim + b.dim, faces });
        }
    }
    PresentedCubicalSet::new(cubes).expect("product of valid presentations is valid")
}

/// Cross product of chains, landing in the chains of [`product`]`(x, y)`.
pub fn cross(x: &PresentedCubicalSet, y: &PresentedCubicalSet, sigma: &Chain, tau: &Chain) -> Result<Chain> {
    let mut out = Chain::zero();
    for (a, ca) in sigma.iter() {
        if !x.contains(a) {
            return Err(CubicalError::UnknownCube(a.to_string()));
        }
        for (b, cb) in tau.iter() {
            if !y.contains(b) {
                return Err(CubicalError::UnknownCube(b.to_string()));
            }
            let c = ca.checked_mul(cb).ok_or(crate::exactalg::AlgebraError::Overflow)?;
            out.add_term(pair_label(a, b), c)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{graph, standard_cube};

    #[test]
    fn points_multiply_to_a_point() {
        let x = graph(&["p"], &[]);
        let y = graph(&["q"], &[]);
        let xy = product(&x, &y);
        assert_eq!(xy.len(), 1);
        assert_eq!(xy.dim("p×q").unwrap(), 0);
    }

    #[test]
    fn leibniz_for_two_intervals() {
        let i = standard_cube(1);
        let ii = product(&i, &i);
        let s = Chain::generator("[*]");
        let lhs = ii.boundary_chain(&cross(&i, &i, &s, &s).unwrap()).unwrap();
        let a = cross(&i, &i, &i.boundary("[*]").unwrap(), &s).unwrap();
        let b = cross(&i, &i, &s, &i.boundary("[*]").unwrap()).unwrap();
        assert_eq!(lhs, a.minus(&b).unwrap());
        // −(0×*) + (1×*) + (*×0) − (*×1)
        let expected = Chain::from_terms([("[0]×[*]", -1), ("[1]×[*]", 1), ("[*]×[0]", 1), ("[*]×[1]", -1)]).unwrap();
        assert_eq!(lhs, expected);
    }

    #[test]
    fn cross_is_bilinear() {
        let i = standard_cube(1);
        let s = Chain::generator("[*]");
        let t = Chain::generator("[0]");
        let u = Chain::generator("[1]");
        let lhs = cross(&i, &i, &s, &t.plus(&u).unwrap()).unwrap();
        let rhs = cross(&i, &i, &s, &t).unwrap().plus(&cross(&i, &i, &s, &u).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unknown_factor_rejected() {
        let i = standard_cube(1);
        let err = cross(&i, &i, &Chain::generator("nope"), &Chain::generator("[0]")).unwrap_err();
        assert_eq!(err, CubicalError::UnknownCube("nope".into()));
    }
}
