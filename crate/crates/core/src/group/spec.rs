//! The group-spec grammar:
//!
//! ```text
//! cyclic:n
//! elab:p^a
//! frob:p,a,h
//! affine:p,a,gens=r11 r12 ..;r21 ..|..   (generators |, rows ;, entries spaces)
//! prod:<spec>*<spec>
//! ```

use super::Matrix;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Elab { p: u64, a: u32 },
    Frob { p: u32, a: u32, h: u64 },
    Affine { p: u32, a: usize, gens: Vec<Matrix> },
    Prod(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn parse(s: &str) -> Result<GroupSpec> {
        let s = s.trim();
        let bad = |msg: &str| Error::ParseSpec(format!("`{s}`: {msg}"));
        if let Some(rest) = s.strip_prefix("cyclic:") {
            let n: u64 = rest.trim().parse().map_err(|_| bad("cyclic:n needs an integer"))?;
            if n == 0 {
                return Err(bad("order must be positive"));
            }
            return Ok(GroupSpec::Cyclic(n));
        }
        if let Some(rest) = s.strip_prefix("elab:") {
            let (p, a) = rest
                .split_once('^')
                .ok_or_else(|| bad("elab:p^a needs a caret"))?;
            let p: u64 = p.trim().parse().map_err(|_| bad("bad prime"))?;
            let a: u32 = a.trim().parse().map_err(|_| bad("bad exponent"))?;
            return Ok(GroupSpec::Elab { p, a });
        }
        if let Some(rest) = s.strip_prefix("frob:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 3 {
                return Err(bad("frob:p,a,h needs three comma-separated integers"));
            }
            let p: u32 = parts[0].trim().parse().map_err(|_| bad("bad p"))?;
            let a: u32 = parts[1].trim().parse().map_err(|_| bad("bad a"))?;
            let h: u64 = parts[2].trim().parse().map_err(|_| bad("bad h"))?;
            return Ok(GroupSpec::Frob { p, a, h });
        }
        if let Some(rest) = s.strip_prefix("affine:") {
            let parts: Vec<&str> = rest.splitn(3, ',').collect();
            if parts.len() != 3 {
                return Err(bad("affine:p,a,gens=… needs p, a, and generators"));
            }
            let p: u32 = parts[0].trim().parse().map_err(|_| bad("bad p"))?;
            let a: usize = parts[1].trim().parse().map_err(|_| bad("bad a"))?;
            let gens_str = parts[2]
                .trim()
                .strip_prefix("gens=")
                .ok_or_else(|| bad("third field must start with gens="))?;
            let mut gens = Vec::new();
            for gs in gens_str.split('|') {
                let mut e = Vec::with_capacity(a * a);
                let rows: Vec<&str> = gs.split(';').collect();
                if rows.len() != a {
                    return Err(bad(&format!("generator needs {a} rows")));
                }
                for row in rows {
                    let entries: Vec<&str> = row.split_whitespace().collect();
                    if entries.len() != a {
                        return Err(bad(&format!("row needs {a} entries")));
                    }
                    for entry in entries {
                        let v: u32 = entry.parse().map_err(|_| bad("bad matrix entry"))?;
                        e.push(v % p);
                    }
                }
                gens.push(Matrix { a, p, e });
            }
            return Ok(GroupSpec::Affine { p, a, gens });
        }
        if let Some(rest) = s.strip_prefix("prod:") {
            let factors: Vec<&str> = rest.split('*').collect();
            if factors.len() < 2 {
                return Err(bad("prod needs at least two *-separated specs"));
            }
            let specs = factors
                .iter()
                .map(|f| GroupSpec::parse(f))
                .collect::<Result<Vec<_>>>()?;
            return Ok(GroupSpec::Prod(specs));
        }
        Err(bad("unknown spec prefix"))
    }

    /// Canonical rendering matching the grammar (parse ∘ render = id).
    pub fn render(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("cyclic:{n}"),
            GroupSpec::Elab { p, a } => format!("elab:{p}^{a}"),
            GroupSpec::Frob { p, a, h } => format!("frob:{p},{a},{h}"),
            GroupSpec::Affine { p, a, gens } => render_affine_spec(*p, *a, gens),
            GroupSpec::Prod(specs) => format!(
                "prod:{}",
                specs.iter().map(|s| s.render()).collect::<Vec<_>>().join("*")
            ),
        }
    }
}

pub fn render_affine_spec(p: u32, a: usize, gens: &[Matrix]) -> String {
    let gens_str = gens
        .iter()
        .map(|m| {
            (0..a)
                .map(|i| {
                    (0..a)
                        .map(|j| m.at(i, j).to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join(";")
        })
        .collect::<Vec<_>>()
        .join("|");
    format!("affine:{p},{a},gens={gens_str}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_grammar() {
        assert_eq!(GroupSpec::parse("cyclic:9").unwrap(), GroupSpec::Cyclic(9));
        assert_eq!(
            GroupSpec::parse("elab:3^2").unwrap(),
            GroupSpec::Elab { p: 3, a: 2 }
        );
        assert_eq!(
            GroupSpec::parse("frob:7,1,3").unwrap(),
            GroupSpec::Frob { p: 7, a: 1, h: 3 }
        );
        let aff = GroupSpec::parse("affine:7,1,gens=2").unwrap();
        match &aff {
            GroupSpec::Affine { p: 7, a: 1, gens } => assert_eq!(gens[0].e, vec![2]),
            _ => panic!("wrong variant"),
        }
        let two_gen = GroupSpec::parse("affine:5,2,gens=2 0;0 3|0 1;1 0").unwrap();
        match &two_gen {
            GroupSpec::Affine { gens, .. } => assert_eq!(gens.len(), 2),
            _ => panic!("wrong variant"),
        }
        let prod = GroupSpec::parse("prod:cyclic:3*frob:7,1,3").unwrap();
        match &prod {
            GroupSpec::Prod(f) => assert_eq!(f.len(), 2),
            _ => panic!("wrong variant"),
        }
    }

    #[test]
    fn render_round_trips() {
        for s in [
            "cyclic:9",
            "elab:3^2",
            "frob:7,1,3",
            "affine:5,2,gens=2 0;0 3|0 1;1 0",
            "prod:cyclic:3*frob:7,1,3",
        ] {
            let spec = GroupSpec::parse(s).unwrap();
            assert_eq!(spec.render(), s);
            assert_eq!(GroupSpec::parse(&spec.render()).unwrap(), spec);
        }
    }

    #[test]
    fn rejects_malformed_specs() {
        for s in ["cyclic:", "elab:9", "frob:7,1", "affine:7,1,2", "prod:cyclic:3", "nope:1"] {
            assert!(GroupSpec::parse(s).is_err(), "{s} should fail");
        }
    }
}
