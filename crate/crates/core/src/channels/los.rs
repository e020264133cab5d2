use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{ChannelMatrix, PlanarAperture};
use crate::em::{dyadic_green_unchecked, scalar_green_at, CarrierConfig};
use crate::error::{Error, Result};

fn coupling_prefactor(tx: &PlanarAperture, rx: &PlanarAperture, carrier: &CarrierConfig) -> Complex64 {
    let w = carrier.angular_frequency_rad_per_s;
    Complex64::new(0.0, -w * carrier.permeability * rx.element_area_m2() * tx.element_area_m2())
}

fn check_disjoint(tx: &PlanarAperture, rx: &PlanarAperture) -> Result<()> {
    for r in rx.element_centers() {
        for s in tx.element_centers() {
            if r.distance(s) == 0.0 {
                return Err(Error::validation("transmit and receive apertures share an element position"));
            }
        }
    }
    Ok(())
}

/// Polarized line-of-sight channel: the 3×3 block for receive element `m`
/// and transmit element `n` is `−jωμ a_R a_T G(r_m, s_n)`.
pub fn los_dyadic_channel(tx: &PlanarAperture, rx: &PlanarAperture, carrier: &CarrierConfig) -> Result<ChannelMatrix> {
    check_disjoint(tx, rx)?;
    let pre = coupling_prefactor(tx, rx, carrier);
    let k0 = carrier.k0();
    let (m, n) = (rx.len(), tx.len());
    let mut h = DMatrix::zeros(3 * m, 3 * n);
    for (i, r) in rx.element_centers().iter().enumerate() {
        for (j, s) in tx.element_centers().iter().enumerate() {
            let dv = *r - *s;
            let g = dyadic_green_unchecked(dv, dv.norm(), k0);
            for p in 0..3 {
                for q in 0..3 {
                    h[(3 * i + p, 3 * j + q)] = pre * g.0[(p, q)];
                }
            }
        }
    }
    ChannelMatrix::polarized(h)
}

/// Scalar line-of-sight channel, `−jωμ a_R a_T g(|r_m − s_n|)`.
pub fn los_scalar_channel(tx: &PlanarAperture, rx: &PlanarAperture, carrier: &CarrierConfig) -> Result<ChannelMatrix> {
    check_disjoint(tx, rx)?;
    let pre = coupling_prefactor(tx, rx, carrier);
    let k0 = carrier.k0();
    let h = DMatrix::from_fn(rx.len(), tx.len(), |i, j| {
        pre * scalar_green_at(rx.element_centers()[i].distance(&tx.element_centers()[j]), k0)
    });
    ChannelMatrix::scalar(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::em::{dyadic_green, Point3, Polarization::*};

    fn carrier() -> CarrierConfig {
        CarrierConfig::from_wavelength(1.0).unwrap()
    }

    #[test]
    fn axial_pair_is_diagonal() {
        let c = carrier();
        let tx = PlanarAperture::grid(1, 1, 0.5, Point3::ORIGIN).unwrap();
        let rx = PlanarAperture::grid(1, 1, 0.5, Point3::new(0.0, 0.0, 3.0)).unwrap();
        let h = los_dyadic_channel(&tx, &rx, &c).unwrap();
        for (p, q) in [(X, Y), (Y, X), (X, Z), (Z, X), (Y, Z), (Z, Y)] {
            assert!(h.block(p, q).unwrap()[(0, 0)].norm() < 1e-18);
        }
        let xx = h.block(X, X).unwrap()[(0, 0)];
        let yy = h.block(Y, Y).unwrap()[(0, 0)];
        assert!((xx - yy).norm() <= 1e-15 * xx.norm());
    }

    #[test]
    fn blocks_match_green() {
        let c = carrier();
        let tx = PlanarAperture::grid(2, 3, 0.5, Point3::ORIGIN).unwrap();
        let rx = PlanarAperture::grid(3, 2, 0.5, Point3::new(0.3, -0.2, 2.0)).unwrap();
        let h = los_dyadic_channel(&tx, &rx, &c).unwrap();
        let pre = Complex64::new(0.0, -c.angular_frequency_rad_per_s * c.permeability * 0.25 * 0.25);
        let g = dyadic_green(&rx.element_centers()[4], &tx.element_centers()[1], &c).unwrap();
        for p in 0..3 {
            for q in 0..3 {
                let want = pre * g.0[(p, q)];
                assert!((h.entries()[(12 + p, 3 + q)] - want).norm() <= 1e-12 * want.norm().max(1e-30));
            }
        }
    }

    #[test]
    fn swap_transposes_blocks() {
        let c = carrier();
        let a = PlanarAperture::grid(2, 2, 0.5, Point3::ORIGIN).unwrap();
        let b = PlanarAperture::grid(3, 1, 0.5, Point3::new(0.1, 0.4, 1.5)).unwrap();
        let h1 = los_dyadic_channel(&a, &b, &c).unwrap();
        let h2 = los_dyadic_channel(&b, &a, &c).unwrap();
        for p in crate::em::Polarization::ALL {
            for q in crate::em::Polarization::ALL {
                let d = h1.block(p, q).unwrap() - h2.block(q, p).unwrap().transpose();
                assert!(d.iter().all(|z| z.norm() < 1e-9));
            }
        }
    }

    #[test]
    fn overlapping_rejected() {
        let a = PlanarAperture::grid(2, 2, 0.5, Point3::ORIGIN).unwrap();
        assert!(los_dyadic_channel(&a, &a, &carrier()).is_err());
        assert!(los_scalar_channel(&a, &a, &carrier()).is_err());
    }

    #[test]
    fn linear_in_element_area() {
        let c = carrier();
        let tx = PlanarAperture::grid(2, 2, 0.5, Point3::ORIGIN).unwrap();
        let rx = PlanarAperture::grid(2, 2, 0.5, Point3::new(0.0, 0.0, 1.0)).unwrap();
        let h1 = los_dyadic_channel(&tx.clone().with_element_area(0.1).unwrap(), &rx, &c).unwrap();
        let h2 = los_dyadic_channel(&tx.with_element_area(0.2).unwrap(), &rx, &c).unwrap();
        for (a, b) in h1.entries().iter().zip(h2.entries().iter()) {
            assert!((b.norm() - 2.0 * a.norm()).abs() <= 1e-12 * b.norm().max(1e-300));
        }
    }
}
