//! Named and parameterised generators of test functions.
//!
//! Text form: `family:name(k=v,…)#seed`. Positional arguments fill the
//! family's parameters in order, so `family:or(3)` is `family:or(n=3)`.
//! Randomised families draw from ChaCha8 seeded with `seed_from_u64(seed)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::alt;
use crate::table::{TruthTable, MAX_ARITY};

/// Identifier of the generator behind every seeded family.
pub const PRNG_ALGORITHM: &str = "chacha8/seed_from_u64";

/// Registered families with their parameter names, in positional order.
pub const FAMILIES: &[(&str, &[&str])] = &[
    ("const0", &["n"]),
    ("const1", &["n"]),
    ("or", &["n"]),
    ("and", &["n"]),
    ("parity", &["n"]),
    ("majority", &["n"]),
    ("tribes", &["w", "s"]),
    ("address", &["k"]),
    ("and_or_tree", &["depth", "fanin"]),
    ("random", &["n"]),
    ("random_monotone", &["n"]),
    ("symmetric_profile", &["profile"]),
    ("with_alt", &["n", "a"]),
];

/// A family name, its parameters and the seed for randomised members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
}

impl FamilySpec {
    pub fn new(name: &str) -> Self {
        FamilySpec {
            name: name.to_string(),
            params: BTreeMap::new(),
            seed: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn bad(&self, reason: impl Into<String>) -> Error {
        Error::BadParams {
            family: self.name.clone(),
            reason: reason.into(),
        }
    }

    fn int(&self, key: &str) -> Result<usize> {
        let raw = self
            .params
            .get(key)
            .ok_or_else(|| self.bad(format!("missing parameter {key}")))?;
        raw.parse()
            .map_err(|_| self.bad(format!("{key}={raw} is not a non-negative integer")))
    }

    fn arity(&self, key: &str) -> Result<usize> {
        let n = self.int(key)?;
        if n > MAX_ARITY {
            return Err(self.bad(format!("{key}={n} exceeds the arity limit {MAX_ARITY}")));
        }
        Ok(n)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family:{}(", self.name)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}={v}")?;
        }
        write!(f, ")#{}", self.seed)
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let body = text
            .trim()
            .strip_prefix("family:")
            .ok_or_else(|| Error::parse(text, "family specs start with \"family:\""))?;
        let (body, seed) = match body.rsplit_once('#') {
            Some((b, s)) => (
                b,
                s.trim()
                    .parse()
                    .map_err(|_| Error::parse(text, format!("bad seed {s:?}")))?,
            ),
            None => (body, 0),
        };
        let (name, args) = match body.split_once('(') {
            Some((name, rest)) => {
                let args = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::parse(text, "missing closing parenthesis"))?;
                (name.trim(), args)
            }
            None => (body.trim(), ""),
        };
        let names = FAMILIES
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, p)| *p)
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
        let mut spec = FamilySpec::new(name).seed(seed);
        let mut positional = 0;
        for arg in args.split(',').map(str::trim).filter(|a| !a.is_empty()) {
            let (key, value) = match arg.split_once('=') {
                Some((k, v)) => (k.trim().to_string(), v.trim().to_string()),
                None => {
                    let key = names.get(positional).ok_or_else(|| {
                        Error::parse(text, format!("too many positional arguments for {name}"))
                    })?;
                    positional += 1;
                    (key.to_string(), arg.to_string())
                }
            };
            if !names.contains(&key.as_str()) {
                return Err(spec.bad(format!("unknown parameter {key}")));
            }
            spec.params.insert(key, value);
        }
        Ok(spec)
    }
}

/// Parses either `<n>:<hex>` or a family spec.
pub fn parse_function(text: &str) -> Result<TruthTable> {
    if text.trim().starts_with("family:") {
        generate(&text.parse()?)
    } else {
        text.parse()
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly random table.
pub fn random(n: usize, seed: u64) -> Result<TruthTable> {
    let mut r = rng(seed);
    TruthTable::from_fn(n, |_| r.gen::<bool>())
}

/// A random table closed upwards: `f(x) = 1` iff some `y ⪯ x` was drawn 1.
pub fn random_monotone(n: usize, seed: u64) -> Result<TruthTable> {
    let base = random(n, seed)?;
    let mut v: Vec<bool> = (0..base.len()).map(|x| base.get(x)).collect();
    for i in 0..n {
        for x in 0..v.len() {
            if x >> i & 1 == 1 {
                v[x] |= v[x ^ 1 << i];
            }
        }
    }
    TruthTable::from_fn(n, |x| v[x])
}

/// `f(x) = profile[|x|]`; the profile has `n + 1` entries.
pub fn symmetric_profile(profile: &[bool]) -> Result<TruthTable> {
    let n = profile
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::BadParams {
            family: "symmetric_profile".into(),
            reason: "empty profile".into(),
        })?;
    TruthTable::from_fn(n, |x| profile[x.count_ones() as usize])
}

fn tribes(w: usize, s: usize) -> Result<TruthTable> {
    let block = (1usize << w) - 1;
    TruthTable::from_fn(w * s, |x| (0..s).any(|j| x >> (j * w) & block == block))
}

/// Multiplexer: coordinates `0..k` address one of the `2^k` data
/// coordinates that follow.
fn address(k: usize) -> Result<TruthTable> {
    TruthTable::from_fn(k + (1 << k), |x| {
        let a = x & ((1 << k) - 1);
        x >> (k + a) & 1 == 1
    })
}

/// Complete tree of the given depth with AND at the root and alternating
/// levels; leaves are distinct variables, left to right.
fn and_or_tree(depth: usize, fanin: usize) -> Result<TruthTable> {
    fn eval(x: usize, depth: usize, fanin: usize, first: usize, is_and: bool) -> bool {
        if depth == 0 {
            return x >> first & 1 == 1;
        }
        let width = fanin.pow(depth as u32 - 1);
        let mut kids = (0..fanin).map(|c| eval(x, depth - 1, fanin, first + c * width, !is_and));
        if is_and {
            kids.all(|b| b)
        } else {
            kids.any(|b| b)
        }
    }
    TruthTable::from_fn(fanin.pow(depth as u32), |x| eval(x, depth, fanin, 0, true))
}

/// A function with alternating number exactly `a`: a symmetric profile
/// starting at 0 whose `a` value changes sit at seeded levels, then seeded
/// single-point flips that keep the alternating number. `a = 0` gives
/// const 0 and `a = n` gives parity; neither is perturbed.
pub fn with_alt(n: usize, a: usize, seed: u64) -> Result<TruthTable> {
    if a > n {
        return Err(Error::BadParams {
            family: "with_alt".into(),
            reason: format!("alternating number {a} is impossible with {n} variables"),
        });
    }
    let mut r = rng(seed);
    let mut changes = vec![false; n];
    for level in sample(&mut r, n, a).iter() {
        changes[level] = true;
    }
    let mut profile = vec![false; n + 1];
    for level in 0..n {
        profile[level + 1] = profile[level] ^ changes[level];
    }
    let mut t = symmetric_profile(&profile)?;
    if a != 0 && a != n && n <= 10 {
        for _ in 0..n {
            let x = r.gen_range(0..t.len());
            let flipped = TruthTable::from_fn(n, |y| t.get(y) ^ (y == x))?;
            if alt(&flipped).value == a {
                t = flipped;
            }
        }
    }
    let got = alt(&t).value;
    if got != a {
        return Err(Error::Invariant(format!(
            "with_alt({n}, {a}) produced alt {got}"
        )));
    }
    Ok(t)
}

/// Builds the function a spec names.
pub fn generate(spec: &FamilySpec) -> Result<TruthTable> {
    match spec.name.as_str() {
        "const0" => TruthTable::constant(spec.arity("n")?, false),
        "const1" => TruthTable::constant(spec.arity("n")?, true),
        "or" => TruthTable::from_fn(spec.arity("n")?, |x| x != 0),
        "and" => {
            let n = spec.arity("n")?;
            TruthTable::from_fn(n, |x| x == (1 << n) - 1)
        }
        "parity" => TruthTable::from_fn(spec.arity("n")?, |x| x.count_ones() % 2 == 1),
        "majority" => {
            let n = spec.arity("n")?;
            if n % 2 == 0 {
                return Err(spec.bad("majority needs an odd number of variables"));
            }
            TruthTable::from_fn(n, |x| 2 * x.count_ones() as usize > n)
        }
        "tribes" => {
            let (w, s) = (spec.int("w")?, spec.int("s")?);
            if w == 0 || w.saturating_mul(s) > MAX_ARITY {
                return Err(spec.bad("need w ≥ 1 and w·s within the arity limit"));
            }
            tribes(w, s)
        }
        "address" => {
            let k = spec.int("k")?;
            if k > 4 {
                return Err(spec.bad("address needs k ≤ 4"));
            }
            address(k)
        }
        "and_or_tree" => {
            let (depth, fanin) = (spec.int("depth")?, spec.int("fanin")?);
            let fits = u32::try_from(depth)
                .ok()
                .and_then(|d| fanin.checked_pow(d))
                .is_some_and(|n| n <= MAX_ARITY);
            if fanin == 0 || !fits {
                return Err(spec.bad("need fanin ≥ 1 and fanin^depth within the arity limit"));
            }
            and_or_tree(depth, fanin)
        }
        "random" => random(spec.arity("n")?, spec.seed),
        "random_monotone" => random_monotone(spec.arity("n")?, spec.seed),
        "symmetric_profile" => {
            let raw = spec
                .params
                .get("profile")
                .ok_or_else(|| spec.bad("missing parameter profile"))?;
            let bits = raw
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(spec.bad(format!("profile {raw:?} must be a 0/1 string"))),
                })
                .collect::<Result<Vec<bool>>>()?;
            if bits.is_empty() || bits.len() > MAX_ARITY + 1 {
                return Err(spec.bad("profile length must be 1..=25"));
            }
            symmetric_profile(&bits)
        }
        "with_alt" => with_alt(spec.arity("n")?, spec.int("a")?, spec.seed),
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}
