//! Default parameter suites and the plain-text suite file format.
//!
//! One check per line: an identity id followed by `key=value` pairs. The keys
//! `nq` and `nt` set the truncation bounds (`nt` defaults to `nq`, `nq` to 20);
//! every other key binds a schema parameter. Values are `formal`, rationals such
//! as `-2/5`, or comma lists for list parameters. `#` starts a comment.
//!
//! ```text
//! # c bound, Nq = Nt = 30
//! ramanujan-entry4 c=-1/3 nq=30
//! general-f c=1/2 d=1/3 lambda=1,-2,3 nq=20 nt=20
//! ```

use super::{find_identity, IdentityError, ParamBinding, ParamValue};

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteEntry {
    pub id: String,
    pub binding: ParamBinding,
}

const DEFAULT_NQ: u32 = 20;

const DEFAULTS: &str = "
ramanujan-entry4 c=1/2 nq=20
ramanujan-entry4 c=-1/3 nq=30
ramanujan-entry4 c=2/5 nq=40
kluyver nq=20
kluyver nq=30
kluyver nq=40
uchimura-3way nq=20
uchimura-3way nq=30
uchimura-3way nq=40
uchimura-bell m=1 nq=20
uchimura-bell m=3 nq=30
uchimura-bell m=5 nq=40
abem-bell m=1 c=1/2 nq=20
abem-bell m=2 c=-1/3 nq=30
abem-bell m=4 c=2/5 nq=40
exp-cumulant c=1/2 nq=20
exp-cumulant c=-1/3 nq=30
exp-cumulant c=2/5 nq=40
dilcher-1 k=1 nq=20
dilcher-1 k=3 nq=30
dilcher-1 k=5 nq=40
acs-lemma k=1 nq=20
acs-lemma k=3 nq=30
acs-lemma k=5 nq=40
dixit-maji c=1/2 nq=20
dixit-maji c=-1/3 nq=30
dixit-maji c=2/5 nq=20
gupta-kumar-alpha alpha=2 nq=20
gupta-kumar-alpha alpha=-2/5 nq=30
gupta-kumar-alpha alpha=5/2 nq=20
general-f c=1/2 d=1/3 lambda=1,1 nq=20
general-f c=-1/3 d=2/5 lambda=1,-2,3 nq=30
general-f c=2/5 d=-1/7 lambda=1/2,0,0,1 nq=20
rr-alpha c=1/2 d=1/3 alpha=2 nq=20
rr-alpha c=-1/3 d=2/5 alpha=-2/5 nq=30
rr-alpha c=2/5 d=-1/7 alpha=5/2 nq=20
cor-2var-rr c=1/2 alpha=2 nq=20
cor-2var-rr c=-1/3 alpha=-2/5 nq=30
cor-2var-rr c=2/5 alpha=5/2 nq=20
uchimura-2var alpha=1 r=1 nq=20
uchimura-2var alpha=2 r=2 nq=30
uchimura-2var alpha=5/2 r=3 nq=40
uchimura-2var alpha=-2/5 r=2 nq=30
dilcher-corrected k=1 r=1 nq=20
dilcher-corrected k=2 r=3 nq=30
dilcher-corrected k=3 r=2 nq=40
dilcher-corrected k=5 r=4 nq=30
dilcher-original-discrepancy k=2 nq=40
dilcher-original-discrepancy k=3 nq=40
dilcher-original-discrepancy k=4 nq=40
acs-pk k=1 nq=20
acs-pk k=2 nq=30
acs-pk k=3 nq=30
gk-pk k=1 nq=20
gk-pk k=2 nq=30
gk-pk k=3 nq=20
gk-pk-2var k=1 c=1/3 nq=20
gk-pk-2var k=2 c=-1/4 nq=30
gk-pk-2var k=3 c=2/5 nq=20
gk-pk-2var-c k=1 c=1/3 nq=20
gk-pk-2var-c k=2 c=-1/4 nq=30
gk-pk-2var-c k=3 c=2/5 nq=40
eulerian-3way m=1 c=1/2 nq=20
eulerian-3way m=3 c=-1/3 nq=30
eulerian-3way m=5 c=2/5 nq=40
entry4-uchimura-type c=1/2 nq=20
entry4-uchimura-type c=-1/3 nq=30
entry4-uchimura-type c=2/5 nq=40
uchimura-mm-3way m=1 nq=20
uchimura-mm-3way m=3 nq=30
uchimura-mm-3way m=5 nq=40
lemma5 a=formal c=1/2 r=1 nq=20
lemma5 a=1/2 c=-1/3 r=2 nq=30
lemma5 a=formal c=2/5 r=3 nq=20
lemma5 a=-3/5 c=1/2 r=4 nq=40
lemma6 a=formal c=1/2 i=1 nq=20
lemma6 a=1/2 c=-1/3 i=2 nq=30
lemma6 a=formal c=2/5 i=3 nq=20
lemma6 a=-3/5 c=1/2 i=4 nq=30
lemma7 a=formal c=1/2 r=1 nq=20
lemma7 a=1/2 c=-1/3 r=3 nq=30
lemma7 a=formal c=2/5 r=4 nq=20
lemma7 a=-3/5 c=1/2 r=6 nq=30
t-deriv a=formal c=1/2 r=1 nq=20
t-deriv a=1/2 c=-1/3 r=2 nq=30
t-deriv a=-3/5 c=2/5 r=3 nq=20
prelim-qbinomial A=1/2 z=1/3 nq=20
prelim-qbinomial A=-2 z=2/5 nq=30
prelim-qbinomial A=3/5 z=-1 nq=40
prelim-fine A=1/2 c=1 z=1 nq=20
prelim-fine A=-1/3 c=2/5 z=-2 nq=30
prelim-fine A=2/5 c=-1 z=1/3 nq=20
prelim-qgauss A=1/2 B=1/3 c=1 nq=20
prelim-qgauss A=-2 B=2/5 c=3 nq=30
prelim-qgauss A=2/5 B=-1/7 c=-1 nq=40
prelim-3phi2 A=1/2 B=1/3 C=2 d=1 e=1/5 nq=20
prelim-3phi2 A=-2 B=2/5 C=1/3 d=-1 e=3 nq=30
prelim-3phi2 A=2/5 B=-1/7 C=-3 d=1/2 e=-1/3 nq=40
chu-vandermonde k=1 nq=20
chu-vandermonde k=5 nq=30
chu-vandermonde k=12 nq=40
finite-uchimura N=1 nq=20
finite-uchimura N=2 nq=30
finite-uchimura N=7 nq=40
finite-uchimura N=10 nq=30
u-tails m=0 i=2 nq=20
u-tails m=1 i=3 nq=30
u-tails m=3 i=5 nq=40
";

/// The built-in bindings for one identity, in suite order.
pub fn default_param_suite(id: &str) -> Result<Vec<SuiteEntry>, IdentityError> {
    find_identity(id)?;
    Ok(parse_suite_file(DEFAULTS)?
        .into_iter()
        .filter(|e| e.id == id)
        .collect())
}

/// Parses a suite file; ids and parameters are validated against the registry.
pub fn parse_suite_file(text: &str) -> Result<Vec<SuiteEntry>, IdentityError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| IdentityError::Schema(format!("line {}: {msg}", lineno + 1));
        let mut words = line.split_whitespace();
        let id = words.next().unwrap_or_default();
        let desc = find_identity(id).map_err(|e| at(e.to_string()))?;
        let mut binding = ParamBinding::new(DEFAULT_NQ, DEFAULT_NQ);
        let mut nt = None;
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| at(format!("expected key=value, got `{w}`")))?;
            match k {
                "nq" | "nt" => {
                    let n: u32 = v.parse().map_err(|_| at(format!("bad bound `{v}`")))?;
                    if k == "nq" {
                        binding.nq = n;
                    } else {
                        nt = Some(n);
                    }
                }
                _ => {
                    let value = ParamValue::parse(v).map_err(|e| at(e.to_string()))?;
                    binding.set(k, value);
                }
            }
        }
        binding.nt = nt.unwrap_or(binding.nq);
        let binding = desc.normalize(&binding).map_err(|e| at(e.to_string()))?;
        out.push(SuiteEntry { id: id.to_string(), binding });
    }
    Ok(out)
}

/// Every default binding of every registered identity, in registry order.
pub fn full_default_suite() -> Vec<SuiteEntry> {
    super::list_identities()
        .iter()
        .flat_map(|d| default_param_suite(d.id).unwrap_or_default())
        .collect()
}
