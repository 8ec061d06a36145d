use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::SeriesError;

/// Maximum number of formal variables besides q.
pub const MAX_AUX: usize = 2;

pub type Exps = [u16; 3];

/// Formal variables and truncation bounds of a series.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSpec {
    names: Vec<String>,
    nq: u32,
    nt: u32,
}

impl VarSpec {
    pub fn new<S: AsRef<str>>(names: &[S], nq: u32, nt: u32) -> Result<Self, SeriesError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.first().map(String::as_str) != Some("q") {
            return Err(SeriesError::InvalidSpec("first variable must be q".into()));
        }
        if names.len() > 1 + MAX_AUX {
            return Err(SeriesError::InvalidSpec(format!(
                "at most {MAX_AUX} auxiliary variables"
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || names[..i].contains(n) {
                return Err(SeriesError::InvalidSpec(format!("bad or repeated name {n:?}")));
            }
        }
        if nq > nt {
            return Err(SeriesError::InvalidSpec(format!("Nq={nq} exceeds Nt={nt}")));
        }
        if nt > u16::MAX as u32 / 2 {
            return Err(SeriesError::InvalidSpec("bounds too large".into()));
        }
        Ok(VarSpec { names, nq, nt })
    }

    /// Only q, with Nq = Nt = `n`.
    pub fn q_only(n: u32) -> Self {
        VarSpec::new(&["q"], n, n).unwrap()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn nq(&self) -> u32 {
        self.nq
    }

    pub fn nt(&self) -> u32 {
        self.nt
    }

    pub fn index_of(&self, name: &str) -> Result<usize, SeriesError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| SeriesError::UnknownVariable(name.to_string()))
    }

    pub fn has(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }

    pub fn with_bounds(&self, nq: u32, nt: u32) -> Result<Self, SeriesError> {
        VarSpec::new(&self.names, nq, nt)
    }

    pub fn with_var(&self, name: &str) -> Result<Self, SeriesError> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        VarSpec::new(&names, self.nq, self.nt)
    }

    pub fn without_var(&self, name: &str) -> Result<Self, SeriesError> {
        let i = self.index_of(name)?;
        if i == 0 {
            return Err(SeriesError::InvalidSpec("q cannot be removed".into()));
        }
        let mut names = self.names.clone();
        names.remove(i);
        VarSpec::new(&names, self.nq, self.nt)
    }

    /// Whether an exponent tuple lies inside the bounds.
    pub fn admits(&self, e: &Exps) -> bool {
        let total: u32 = e.iter().map(|&x| x as u32).sum();
        e[0] as u32 <= self.nq && total <= self.nt && e[self.nvars()..].iter().all(|&x| x == 0)
    }
}

impl fmt::Display for VarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] Nq={} Nt={}", self.names.join(","), self.nq, self.nt)
    }
}

/// Dense indexing of the monomials admitted by a [`VarSpec`].
///
/// Monomials are ordered by total degree, then lexicographically by exponent
/// tuple. Any monomial dividing another therefore comes first.
#[derive(Debug)]
pub struct Layout {
    pub(crate) spec: VarSpec,
    pub(crate) monos: Vec<Exps>,
    pub(crate) totals: Vec<u32>,
    /// `deg_start[d]` is the first index of total degree `d`; length Nt + 2.
    pub(crate) deg_start: Vec<usize>,
    table: Vec<u32>,
    stride: [usize; 3],
}

const NONE: u32 = u32::MAX;

impl Layout {
    fn build(spec: VarSpec) -> Layout {
        let nv = spec.nvars();
        let nq = spec.nq as usize;
        let nt = spec.nt as usize;
        let mut monos = Vec::new();
        for d in 0..=nt {
            let mut batch = Vec::new();
            for e0 in 0..=d.min(nq) {
                let rest = d - e0;
                match nv {
                    1 => {
                        if rest == 0 {
                            batch.push([e0 as u16, 0, 0]);
                        }
                    }
                    2 => batch.push([e0 as u16, rest as u16, 0]),
                    _ => {
                        for e1 in 0..=rest {
                            batch.push([e0 as u16, e1 as u16, (rest - e1) as u16]);
                        }
                    }
                }
            }
            batch.sort();
            monos.extend(batch);
        }
        let totals: Vec<u32> = monos.iter().map(|e| e.iter().map(|&x| x as u32).sum()).collect();
        let mut deg_start = vec![0usize; nt + 2];
        for d in 0..=nt + 1 {
            deg_start[d] = totals.partition_point(|&t| (t as usize) < d);
        }
        let dims = [nq + 1, if nv > 1 { nt + 1 } else { 1 }, if nv > 2 { nt + 1 } else { 1 }];
        let stride = [dims[1] * dims[2], dims[2], 1];
        let mut table = vec![NONE; dims[0] * dims[1] * dims[2]];
        for (i, e) in monos.iter().enumerate() {
            let k = e[0] as usize * stride[0] + e[1] as usize * stride[1] + e[2] as usize;
            table[k] = i as u32;
        }
        Layout { spec, monos, totals, deg_start, table, stride }
    }

    /// Shared layout for a spec; layouts are cached for the process lifetime.
    pub fn get(spec: &VarSpec) -> Arc<Layout> {
        static CACHE: OnceLock<Mutex<HashMap<VarSpec, Arc<Layout>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry(spec.clone())
            .or_insert_with(|| Arc::new(Layout::build(spec.clone())))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn index(&self, e: &Exps) -> Option<usize> {
        if !self.spec.admits(e) {
            return None;
        }
        let k = e[0] as usize * self.stride[0] + e[1] as usize * self.stride[1] + e[2] as usize;
        match self.table[k] {
            NONE => None,
            i => Some(i as usize),
        }
    }

    /// Index of `monos[i] + m`, if admitted.
    #[inline]
    pub fn shifted(&self, i: usize, m: &Exps) -> Option<usize> {
        let e = self.monos[i];
        self.index(&[e[0] + m[0], e[1] + m[1], e[2] + m[2]])
    }

    /// Index of `monos[i] - m`, if `m` divides it.
    #[inline]
    pub fn unshifted(&self, i: usize, m: &Exps) -> Option<usize> {
        let e = self.monos[i];
        if e[0] < m[0] || e[1] < m[1] || e[2] < m[2] {
            return None;
        }
        self.index(&[e[0] - m[0], e[1] - m[1], e[2] - m[2]])
    }
}
