//! Trace codes, subfield subcodes, the maximum-trace-dimension predicate
//! and the Delsarte duality bridge (tr(C))^⊥ = (C^⊥)|_{GF(q)}.

use std::sync::Arc;

use crate::codes::{check_cap, for_each_codeword, parse_code_text, write_code_text};
use crate::codes::{LinearCode, Multiplier, Support};
use crate::error::{Error, Result};
use crate::gf::{FieldTower, Level};
use crate::linalg::{rank_in_place, Matrix};

/// A linear code over the field of definition GF(q), usually obtained as a
/// trace code or a subfield subcode.
#[derive(Debug, Clone)]
pub struct SubfieldCode {
    tower: Arc<FieldTower>,
    n: usize,
    k: usize,
    gen: Matrix,
}

impl PartialEq for SubfieldCode {
    /// Row-space equality via canonical reduced row echelon form.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.gen.row_space_eq(&other.gen)
    }
}

impl Eq for SubfieldCode {}

impl SubfieldCode {
    /// Wraps a full-row-rank generator matrix at the GF(q) level.
    pub fn from_generator(gen: Matrix) -> Result<Self> {
        if gen.level() != Level::Base {
            return Err(Error::LevelMismatch {
                left: gen.level(),
                right: Level::Base,
            });
        }
        if gen.rank() != gen.rows() {
            return Err(Error::RankDeficient);
        }
        Ok(SubfieldCode {
            tower: gen.tower().clone(),
            n: gen.cols(),
            k: gen.rows(),
            gen,
        })
    }

    fn from_basis(gen: Matrix) -> Self {
        SubfieldCode {
            tower: gen.tower().clone(),
            n: gen.cols(),
            k: gen.rows(),
            gen,
        }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension over GF(q).
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// The dual over GF(q).
    pub fn dual(&self) -> SubfieldCode {
        Self::from_basis(self.gen.kernel())
    }

    /// Serializes to the code file text format with the subfield marker.
    pub fn to_text(&self) -> String {
        write_code_text(&self.tower, true, &self.gen)
    }

    pub fn from_text(text: &str) -> Result<SubfieldCode> {
        let (_, subfield, gen) = parse_code_text(text)?;
        if !subfield {
            return Err(Error::MalformedCodeFile(
                "expected subfield=true in the header".into(),
            ));
        }
        Self::from_generator(gen)
    }
}

/// The trace code tr(C) over GF(q), spanned by tr(β_i x_j) for the power
/// basis β of GF(q^m)/GF(q) and the generator rows x_j of C.
pub fn trace_code(code: &LinearCode) -> SubfieldCode {
    let matrix = trace_span_matrix(code, None);
    SubfieldCode::from_basis(matrix.row_space_basis())
}

/// dim tr(C), without materializing a basis.
pub fn trace_dimension(code: &LinearCode) -> usize {
    let mut rows = Vec::new();
    let mut scaled = Vec::new();
    trace_rank_scaled(code, None, &mut rows, &mut scaled)
}

/// dim tr(C_a) for the scaled code, without materializing it.
pub fn trace_dimension_scaled(code: &LinearCode, multiplier: &Multiplier) -> Result<usize> {
    if multiplier.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            found: multiplier.len(),
        });
    }
    let mut rows = Vec::new();
    let mut scaled = Vec::new();
    Ok(trace_rank_scaled(
        code,
        Some(multiplier.codes()),
        &mut rows,
        &mut scaled,
    ))
}

/// The mk × n spanning matrix of tr(C_a) over GF(q); identity multiplier
/// when `mult` is None.
fn trace_span_matrix(code: &LinearCode, mult: Option<&[u64]>) -> Matrix {
    let t = code.tower();
    let (m, k, n) = (t.m() as usize, code.k(), code.n());
    let mut entries = vec![0u64; m * k * n];
    let mut scaled = vec![0u64; n];
    fill_trace_rows(code, mult, &mut entries, &mut scaled);
    Matrix::from_codes(t.clone(), Level::Base, m * k, n, entries)
        .expect("trace entries are valid GF(q) codes")
}

fn fill_trace_rows(code: &LinearCode, mult: Option<&[u64]>, rows: &mut [u64], scaled: &mut [u64]) {
    let t = code.tower();
    let (m, k, n) = (t.m() as usize, code.k(), code.n());
    debug_assert_eq!(rows.len(), m * k * n);
    for j in 0..k {
        let g = code.generator().row_codes(j);
        match mult {
            Some(a) => {
                for l in 0..n {
                    scaled[l] = t.ext_mul(g[l], a[l]);
                }
            }
            None => scaled.copy_from_slice(g),
        }
        for i in 0..m {
            let row = &mut rows[(j * m + i) * n..(j * m + i + 1) * n];
            for l in 0..n {
                row[l] = t.ext_trace(scaled[l]);
            }
            if i + 1 < m {
                for slot in scaled.iter_mut() {
                    *slot = t.ext_mul_alpha(*slot);
                }
            }
        }
    }
}

/// dim tr(C_a) with reusable scratch buffers, for enumeration loops.
pub(crate) fn trace_rank_scaled(
    code: &LinearCode,
    mult: Option<&[u64]>,
    rows: &mut Vec<u64>,
    scaled: &mut Vec<u64>,
) -> usize {
    let t = code.tower();
    let (m, k, n) = (t.m() as usize, code.k(), code.n());
    rows.clear();
    rows.resize(m * k * n, 0);
    scaled.clear();
    scaled.resize(n, 0);
    fill_trace_rows(code, mult, rows, scaled);
    rank_in_place(t, Level::Base, rows, m * k, n)
}

/// The subfield subcode C|_{GF(q)} = C ∩ GF(q)^n, via the GF(q)-expansion
/// of the parity-check system of C.
pub fn subfield_subcode(code: &LinearCode) -> SubfieldCode {
    let t = code.tower();
    let (m, n) = (t.m() as usize, code.n());
    let parity = code.generator().kernel(); // (n-k) x n over GF(q^m)
    let rows = parity.rows();
    let mut entries = vec![0u64; rows * m * n];
    let mut coords = vec![0u64; m];
    for r in 0..rows {
        for l in 0..n {
            t.ext_coords(parity.code_at(r, l), &mut coords);
            for (i, &ci) in coords.iter().enumerate() {
                entries[(r * m + i) * n + l] = ci;
            }
        }
    }
    let expanded = Matrix::from_codes(t.clone(), Level::Base, rows * m, n, entries)
        .expect("coordinates are valid GF(q) codes");
    SubfieldCode::from_basis(expanded.kernel())
}

/// Whether dim tr(C) attains the ceiling m·k.
pub fn has_max_trace_dimension(code: &LinearCode) -> bool {
    trace_dimension(code) == code.tower().m() as usize * code.k()
}

/// Independent oracle for [`has_max_trace_dimension`]: true iff no nonzero
/// codeword has an all-zero trace.
pub fn max_trace_dim_by_codeword_scan(code: &LinearCode, cap: u64) -> Result<bool> {
    let t = code.tower();
    check_cap("codeword enumeration", t.qm(), code.k(), cap)?;
    let mut ok = true;
    for_each_codeword(t, code.generator(), &mut |cw| {
        if cw.iter().all(|&c| c == 0) {
            return true; // the zero codeword is exempt
        }
        if cw.iter().all(|&c| t.ext_trace(c) == 0) {
            ok = false;
            return false;
        }
        true
    });
    Ok(ok)
}

/// Regression oracle for Delsarte's theorem: checks
/// (tr(C))^⊥ = (C^⊥)|_{GF(q)} as row spaces. Always true; false signals
/// an implementation bug.
pub fn delsarte_check(code: &LinearCode) -> bool {
    let lhs = trace_code(code).dual();
    let rhs = subfield_subcode(&code.dual());
    lhs == rhs
}

/// The alternant code: the dual of the trace code of the k-dimensional
/// generalized Reed-Solomon code over (support, multiplier). Its dimension
/// is at least n - mk.
pub fn alternant_code(
    tower: Arc<FieldTower>,
    k: usize,
    support: &Support,
    multiplier: &Multiplier,
) -> Result<SubfieldCode> {
    let grs = LinearCode::generalized_reed_solomon(tower, k, support, multiplier)?;
    Ok(trace_code(&grs).dual())
}
