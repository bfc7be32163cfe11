//! Two-region bar mesh and global matrix assembly.

use serde::{Deserialize, Serialize};

use super::tridiag::SymTridiag;
use crate::discretization::element_matrices;
use crate::error::{Error, Result};
use crate::setting::{MassModel, WaveSetting};

/// `n_left` elements of length ℓ followed by `n_right` elements of length αℓ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarMesh {
    pub n_left: usize,
    pub n_right: usize,
    pub alpha: f64,
    pub mass: MassModel,
    /// Left element length ℓ.
    pub ell: f64,
}

/// Treatment of the far (right) end of the bar.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Boundary {
    /// Last node held at zero displacement.
    #[default]
    FixedFarEnd,
    /// Extra elements whose damping grows quadratically up to `max_gamma`,
    /// terminated by a fixed node. Only approximately non-reflecting.
    AbsorbingPad { elements: usize, max_gamma: f64 },
}

impl BarMesh {
    pub fn uniform(n: usize, ell: f64, mass: MassModel) -> Result<Self> {
        Self::graded(n, 0, ell, 1.0, mass)
    }

    pub fn graded(n_left: usize, n_right: usize, ell: f64, alpha: f64, mass: MassModel) -> Result<Self> {
        if n_left + n_right == 0 {
            return Err(Error::domain("elements", 0.0, "mesh needs at least one element"));
        }
        if !(ell.is_finite() && ell > 0.0) {
            return Err(Error::domain("ell", ell, "element length must be positive"));
        }
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::domain("alpha", alpha, "element-size ratio must be positive"));
        }
        Ok(BarMesh {
            n_left,
            n_right,
            alpha,
            mass,
            ell,
        })
    }

    pub fn node_count(&self) -> usize {
        self.n_left + self.n_right + 1
    }

    pub fn element_count(&self) -> usize {
        self.n_left + self.n_right
    }

    pub fn is_uniform(&self) -> bool {
        self.alpha == 1.0 || self.n_right == 0
    }

    pub fn element_length(&self, e: usize) -> f64 {
        if e < self.n_left {
            self.ell
        } else {
            self.alpha * self.ell
        }
    }

    pub fn node_position(&self, j: usize) -> f64 {
        if j <= self.n_left {
            j as f64 * self.ell
        } else {
            self.n_left as f64 * self.ell + (j - self.n_left) as f64 * self.alpha * self.ell
        }
    }

    /// Node shared by the two regions, if both are present.
    pub fn interface_node(&self) -> Option<usize> {
        (self.n_left > 0 && self.n_right > 0).then_some(self.n_left)
    }
}

/// Global stiffness, damping and mass matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Assembled {
    pub k: SymTridiag,
    pub c: SymTridiag,
    pub m: SymTridiag,
}

impl Assembled {
    pub fn node_count(&self) -> usize {
        self.k.len()
    }
}

/// Assemble the bar with unit modulus and density and damping `c = γ/π`.
pub fn assemble(mesh: &BarMesh, s: &WaveSetting) -> Result<Assembled> {
    assemble_with_boundary(mesh, s, Boundary::FixedFarEnd)
}

/// As [`assemble`], appending the pad elements of an absorbing boundary.
pub fn assemble_with_boundary(mesh: &BarMesh, s: &WaveSetting, boundary: Boundary) -> Result<Assembled> {
    s.validate()?;
    let c0 = s.damping_c();
    let mut lengths: Vec<(f64, f64)> = (0..mesh.element_count())
        .map(|e| (mesh.element_length(e), c0))
        .collect();
    if let Boundary::AbsorbingPad { elements, max_gamma } = boundary {
        if !(max_gamma.is_finite() && max_gamma >= s.gamma) {
            return Err(Error::domain("max_gamma", max_gamma, "pad damping must not decrease"));
        }
        let last = mesh.element_length(mesh.element_count() - 1);
        let c_max = max_gamma / std::f64::consts::PI;
        for i in 1..=elements {
            let ramp = (i as f64 / elements as f64).powi(2);
            lengths.push((last, c0 + (c_max - c0) * ramp));
        }
    }
    let n = lengths.len() + 1;
    let mut out = Assembled {
        k: SymTridiag::zeros(n),
        c: SymTridiag::zeros(n),
        m: SymTridiag::zeros(n),
    };
    for (e, &(len, c)) in lengths.iter().enumerate() {
        let em = element_matrices(mesh.mass, len, 1.0, 1.0, c)?;
        out.k.add_block(e, em.k);
        out.c.add_block(e, em.c);
        out.m.add_block(e, em.m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_two_element_consistent_mass() {
        let s = WaveSetting::new(10.0, 4.0, 0.0, MassModel::Consistent).unwrap();
        let mesh = BarMesh::uniform(2, 0.25, MassModel::Consistent).unwrap();
        let asm = assemble(&mesh, &s).unwrap();
        let row = [asm.m.get(1, 0), asm.m.get(1, 1), asm.m.get(1, 2)];
        let expect = [0.25 / 6.0, 0.25 * 2.0 / 3.0, 0.25 / 6.0];
        for (g, e) in row.iter().zip(expect) {
            assert!((g - e).abs() < 1e-15);
        }
    }

    #[test]
    fn lumped_interface_mass() {
        let s = WaveSetting::with_alpha(10.0, 10.0, 0.0, MassModel::Lumped, 2.0).unwrap();
        let mesh = BarMesh::graded(3, 2, 0.1, 2.0, MassModel::Lumped).unwrap();
        let asm = assemble(&mesh, &s).unwrap();
        let j = mesh.interface_node().unwrap();
        assert!((asm.m.get(j, j) - 0.5 * (0.1 + 0.2)).abs() < 1e-15);
        assert_eq!(asm.m.get(j, j + 1), 0.0);
    }

    #[test]
    fn geometry() {
        let mesh = BarMesh::graded(4, 3, 0.5, 1.5, MassModel::Consistent).unwrap();
        assert_eq!(mesh.node_count(), 8);
        assert_eq!(mesh.node_position(4), 2.0);
        assert_eq!(mesh.node_position(7), 2.0 + 3.0 * 0.75);
        assert!(!mesh.is_uniform());
        assert!(BarMesh::graded(4, 0, 0.5, 3.0, MassModel::Lumped).unwrap().is_uniform());
        assert!(BarMesh::graded(4, 3, 0.5, 1.0, MassModel::Lumped).unwrap().is_uniform());
        assert!(BarMesh::uniform(0, 0.5, MassModel::Lumped).is_err());
    }

    #[test]
    fn damping_is_proportional_to_stiffness() {
        let s = WaveSetting::new(10.0, 10.0, 0.3, MassModel::Consistent).unwrap();
        let mesh = BarMesh::graded(5, 5, 0.1, 1.3, MassModel::Consistent).unwrap();
        let asm = assemble(&mesh, &s).unwrap();
        let c = s.damping_c();
        for (x, y) in asm.c.diag.iter().zip(&asm.k.diag) {
            assert!((x - c * y).abs() < 1e-12);
        }
    }

    #[test]
    fn pad_extends_mesh_with_growing_damping() {
        let s = WaveSetting::new(10.0, 10.0, 0.0, MassModel::Lumped).unwrap();
        let mesh = BarMesh::uniform(10, 0.1, MassModel::Lumped).unwrap();
        let b = Boundary::AbsorbingPad {
            elements: 5,
            max_gamma: 1.0,
        };
        let asm = assemble_with_boundary(&mesh, &s, b).unwrap();
        assert_eq!(asm.node_count(), 16);
        let ratios: Vec<f64> = (10..15).map(|e| -asm.c.off[e] / -asm.k.off[e]).collect();
        assert!(ratios.windows(2).all(|w| w[1] > w[0]));
        assert!((ratios[4] - 1.0 / std::f64::consts::PI).abs() < 1e-15);
    }
}
