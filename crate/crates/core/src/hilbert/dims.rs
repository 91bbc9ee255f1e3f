use crate::error::{Error, Result};

/// Default cap on the number of amplitudes in a two-copy workspace vector.
///
/// Work on two copies of a D-dimensional system needs D^2 amplitudes; this
/// bound keeps accidental exponential blow-ups from allocating.
pub const DEFAULT_TWO_COPY_CAP: usize = 1 << 20;

/// Maximum row count for dense two-copy operators (D^2 x D^2 matrices).
pub const DENSE_OPERATOR_CAP: usize = 256;

/// Local dimensions of a multipartite register.
///
/// Subsystem indices are zero-based. Amplitude indices are row-major with
/// subsystem 0 most significant: the basis label (k_0, ..., k_{N-1}) maps to
/// `k_0 * d_1 * ... * d_{N-1} + ... + k_{N-1}`. The two-copy space orders all
/// N original subsystems before all N copies, so a two-copy basis index is
/// `i * D + i'` with `i` the original register's index and `i'` the copy's;
/// the copy of subsystem j is always paired with original subsystem j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsystemDims {
    dims: Vec<usize>,
    total: usize,
    cap: usize,
}

impl SubsystemDims {
    /// Validates local dimensions against the default two-copy cap.
    pub fn new(dims: &[usize]) -> Result<Self> {
        Self::with_cap(dims, DEFAULT_TWO_COPY_CAP)
    }

    /// Validates local dimensions against an explicit two-copy amplitude cap.
    pub fn with_cap(dims: &[usize], cap: usize) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::NoSubsystems);
        }
        if let Some(&dim) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidLocalDimension { dim });
        }
        let mut total: u128 = 1;
        for &d in dims {
            total *= d as u128;
            if total * total > cap as u128 {
                return Err(Error::CapExceeded {
                    required: total * total,
                    cap,
                });
            }
        }
        Ok(Self {
            dims: dims.to_vec(),
            total: total as usize,
            cap,
        })
    }

    /// Number of subsystems N.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Local dimension of subsystem `j`.
    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total Hilbert space dimension D.
    pub fn total_dim(&self) -> usize {
        self.total
    }

    /// Number of amplitudes in a two-copy vector, D^2.
    pub fn two_copy_dim(&self) -> usize {
        self.total * self.total
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Stride of subsystem `j` in a single-copy amplitude index: the product
    /// of the dimensions of all less significant subsystems.
    pub fn stride(&self, j: usize) -> usize {
        self.dims[j + 1..].iter().product()
    }

    /// Digit of subsystem `j` in the single-copy index `idx`.
    pub fn digit(&self, idx: usize, j: usize) -> usize {
        (idx / self.stride(j)) % self.dims[j]
    }

    /// Rejects dense two-copy operator construction beyond the dense cap.
    pub fn check_dense(&self) -> Result<()> {
        let rows = self.two_copy_dim();
        if rows > DENSE_OPERATOR_CAP {
            return Err(Error::DenseCapExceeded {
                rows,
                cap: DENSE_OPERATOR_CAP,
            });
        }
        Ok(())
    }

    /// Validates a strictly increasing, in-range, nonempty list of subsystem
    /// indices. Returns an error describing the first violation.
    pub fn check_subset(&self, subset: &[usize]) -> Result<()> {
        if subset.is_empty() {
            return Err(Error::InvalidSubset {
                reason: "subset is empty".into(),
            });
        }
        for window in subset.windows(2) {
            if window[0] >= window[1] {
                return Err(Error::InvalidSubset {
                    reason: format!(
                        "indices must be strictly increasing, got {} then {}",
                        window[0], window[1]
                    ),
                });
            }
        }
        if let Some(&j) = subset.iter().find(|&&j| j >= self.len()) {
            return Err(Error::InvalidSubset {
                reason: format!("index {j} out of range for {} subsystems", self.len()),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for SubsystemDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}
