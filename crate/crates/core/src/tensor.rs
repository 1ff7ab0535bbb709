/// Dense row-major three-index array of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    dims: [usize; 3],
    data: Vec<f64>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Self {
            dims: [d0, d1, d2],
            data: vec![0.0; d0 * d1 * d2],
        }
    }

    /// Builds from nested vectors, returning `None` if the nesting is ragged.
    pub fn from_nested(nested: &[Vec<Vec<f64>>]) -> Option<Self> {
        let d0 = nested.len();
        let d1 = nested.first().map_or(0, Vec::len);
        let d2 = nested
            .first()
            .and_then(|m| m.first())
            .map_or(0, Vec::len);
        let mut data = Vec::with_capacity(d0 * d1 * d2);
        for plane in nested {
            if plane.len() != d1 {
                return None;
            }
            for row in plane {
                if row.len() != d2 {
                    return None;
                }
                data.extend_from_slice(row);
            }
        }
        Some(Self {
            dims: [d0, d1, d2],
            data,
        })
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<f64>>> {
        let [d0, d1, _] = self.dims;
        (0..d0)
            .map(|i| (0..d1).map(|j| self.row(i, j).to_vec()).collect())
            .collect()
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    #[inline]
    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.dims[0] && j < self.dims[1] && k < self.dims[2]);
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[self.offset(i, j, k)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: f64) {
        let o = self.offset(i, j, k);
        self.data[o] = value;
    }

    /// The fibre `t[i][j][..]`.
    pub fn row(&self, i: usize, j: usize) -> &[f64] {
        let start = self.offset_row(i, j);
        &self.data[start..start + self.dims[2]]
    }

    pub fn row_mut(&mut self, i: usize, j: usize) -> &mut [f64] {
        let start = self.offset_row(i, j);
        let len = self.dims[2];
        &mut self.data[start..start + len]
    }

    fn offset_row(&self, i: usize, j: usize) -> usize {
        assert!(i < self.dims[0] && j < self.dims[1], "row index out of range");
        (i * self.dims[1] + j) * self.dims[2]
    }

    pub fn max_abs_diff(&self, other: &Tensor3) -> Option<f64> {
        if self.dims != other.dims {
            return None;
        }
        Some(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        )
    }
}
