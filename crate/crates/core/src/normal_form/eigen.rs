use serde::Serialize;

use crate::algebra::{eigen_report, EigenReport, Poly, Scalar};
use crate::cohomology::GeneratorRep;
use crate::surface::GeneratorId;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenCheck {
    pub generator: GeneratorId,
    pub pass: bool,
    pub report: EigenReport,
}

/// The image of `gen` must have `char_poly = (x-1)^{2g+1}` and a
/// `2g`-dimensional eigenspace for 1.
pub fn assert_eigen_theorem(rep: &GeneratorRep, gen: GeneratorId) -> Result<EigenCheck> {
    let n = rep.sig().homology_dim();
    if rep.dim() != n + 1 {
        return Err(Error::Shape(format!(
            "expected dimension {}, got {}",
            n + 1,
            rep.dim()
        )));
    }
    let report = eigen_report(rep.image(gen)?)?;
    let pass = report.char_poly == Poly::power_of_linear(&Scalar::one(), n + 1)
        && report.eigenspace_dim_one == n;
    Ok(EigenCheck {
        generator: gen,
        pass,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;
    use crate::cohomology::{build_phi_c, principal_cocycle};
    use crate::surface::SurfaceSig;
    use crate::symplectic::{block_embed, rho0};

    fn sig() -> SurfaceSig {
        SurfaceSig::closed(2).unwrap()
    }

    #[test]
    fn trivial_extension_passes() {
        let rep = GeneratorRep::rho0_plus_trivial(sig()).unwrap();
        let check = assert_eigen_theorem(&rep, GeneratorId::a(1)).unwrap();
        assert!(check.pass);
        assert_eq!(check.report.eigenspace_dim_one, 4);
    }

    #[test]
    fn identity_image_fails() {
        let rep = GeneratorRep::rho0_plus_trivial(sig()).unwrap();
        let rep = rep
            .with_image(GeneratorId::a(1), Matrix::identity(5))
            .unwrap();
        let check = assert_eigen_theorem(&rep, GeneratorId::a(1)).unwrap();
        assert!(!check.pass);
        assert_eq!(check.report.eigenspace_dim_one, 5);
    }

    #[test]
    fn principal_images_pass() {
        let w0 = [3, -1, 2, 1].map(Scalar::from_int);
        let rep = build_phi_c(&principal_cocycle(&sig(), &w0).unwrap()).unwrap();
        for &g in rep.generators() {
            assert!(assert_eigen_theorem(&rep, g).unwrap().pass, "{g}");
        }
    }

    #[test]
    fn value_outside_image_drops_eigenspace() {
        // c(a1) = y1 is not in im(A1 - I) = span(x1): rank(phi - I) becomes 2.
        let y1 = [0, 1, 0, 0].map(Scalar::from_int);
        let a1 = GeneratorId::a(1);
        let m = block_embed(&y1, &rho0(&sig(), a1).unwrap()).unwrap();
        let rep = GeneratorRep::rho0_plus_trivial(sig())
            .unwrap()
            .with_image(a1, m)
            .unwrap();
        let check = assert_eigen_theorem(&rep, a1).unwrap();
        assert!(!check.pass);
        assert_eq!(check.report.eigenspace_dim_one, 3);
        assert_eq!(check.report.mult_of_one, 5);
    }

    #[test]
    fn wrong_dimension_is_an_error() {
        let rep = GeneratorRep::rho0(sig()).unwrap();
        assert!(assert_eigen_theorem(&rep, GeneratorId::a(1)).is_err());
    }
}
