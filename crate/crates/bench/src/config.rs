//! Experiment matrices and the flat `key = value` config format.

use std::fmt;
use std::str::FromStr;

use crate::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GraphClass {
    Er,
    Tree,
}

impl GraphClass {
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Er => "er",
            GraphClass::Tree => "tree",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum WeightType {
    Type1,
    Type2,
    Unit,
}

impl WeightType {
    pub fn name(self) -> &'static str {
        match self {
            WeightType::Type1 => "type1",
            WeightType::Type2 => "type2",
            WeightType::Unit => "unit",
        }
    }
}

impl FromStr for WeightType {
    type Err = BenchError;
    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "type1" => Ok(WeightType::Type1),
            "type2" => Ok(WeightType::Type2),
            "unit" => Ok(WeightType::Unit),
            _ => Err(BenchError::Config(format!("unknown weight type '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Weighted,
    Generalized,
    Separator,
    Naive,
    Random,
    Blackbox,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Weighted,
        Algorithm::Generalized,
        Algorithm::Separator,
        Algorithm::Naive,
        Algorithm::Random,
        Algorithm::Blackbox,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Weighted => "weighted",
            Algorithm::Generalized => "generalized",
            Algorithm::Separator => "separator",
            Algorithm::Naive => "naive",
            Algorithm::Random => "random",
            Algorithm::Blackbox => "blackbox",
        }
    }

    /// Whether the algorithm takes a size bound; the others only run at k = 1.
    pub fn uses_k(self) -> bool {
        matches!(self, Algorithm::Generalized | Algorithm::Separator)
    }
}

impl FromStr for Algorithm {
    type Err = BenchError;
    fn from_str(s: &str) -> Result<Self, BenchError> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| BenchError::Config(format!("unknown algorithm '{s}'")))
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One experiment matrix: instances are `ns x seeds`, each run under every
/// weight type, `(alpha, beta)` pair, `k` and algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Label written to the `experiment` column.
    pub experiment: String,
    pub class: GraphClass,
    pub ns: Vec<usize>,
    pub rho: f64,
    pub degree: usize,
    pub emin: usize,
    pub emax: usize,
    pub weights: Vec<WeightType>,
    pub p: f64,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub ks: Vec<usize>,
    pub seeds: usize,
    pub base_seed: u64,
    pub algorithms: Vec<Algorithm>,
}

pub const DEFAULT_BASE_SEED: u64 = 20230707;

impl Config {
    /// Desk-scale defaults for experiments 1 to 5: ER experiments at the
    /// original sizes, tree-like ones capped at n <= 200 and 20 seeds.
    pub fn preset(id: u32) -> Result<Config, BenchError> {
        let er = |ns: Vec<usize>| Config {
            experiment: id.to_string(),
            class: GraphClass::Er,
            ns,
            rho: 0.1,
            degree: 4,
            emin: 2,
            emax: 5,
            weights: vec![WeightType::Type1, WeightType::Type2],
            p: 0.1,
            alphas: vec![0.0, 1.0],
            betas: vec![1.0],
            ks: vec![1],
            seeds: 100,
            base_seed: DEFAULT_BASE_SEED,
            algorithms: Algorithm::ALL.to_vec(),
        };
        let tree = |degree, emin, emax| Config {
            class: GraphClass::Tree,
            degree,
            emin,
            emax,
            seeds: 20,
            ..er(vec![100, 200])
        };
        match id {
            1 | 4 => Ok(er(vec![10, 15, 20, 25])),
            2 => Ok(er(vec![8, 10, 12, 14])),
            3 => Ok(tree(4, 2, 5)),
            5 => Ok(tree(40, 20, 50)),
            _ => Err(BenchError::Config(format!("no preset for experiment {id}"))),
        }
    }

    /// Reads `key = value` lines on top of the preset named by `experiment`
    /// (or of experiment 1). `#` starts a comment; lists are comma separated.
    pub fn parse(text: &str) -> Result<Config, BenchError> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| BenchError::Config(format!("line {}: expected key = value", i + 1)))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        let base = match pairs.iter().find(|(k, _)| k == "experiment") {
            Some((_, v)) => match v.parse::<u32>() {
                Ok(id) => Config::preset(id)?,
                Err(_) => Config { experiment: v.clone(), ..Config::preset(1)? },
            },
            None => Config::preset(1)?,
        };
        let mut cfg = base;
        for (k, v) in &pairs {
            cfg.set(k, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sets one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), BenchError> {
        match key {
            "experiment" => self.experiment = value.to_string(),
            "class" => {
                self.class = match value {
                    "er" => GraphClass::Er,
                    "tree" => GraphClass::Tree,
                    _ => return Err(BenchError::Config(format!("unknown graph class '{value}'"))),
                }
            }
            "n" => self.ns = list(key, value)?,
            "rho" => self.rho = scalar(key, value)?,
            "degree" => self.degree = scalar(key, value)?,
            "emin" => self.emin = scalar(key, value)?,
            "emax" => self.emax = scalar(key, value)?,
            "weights" => self.weights = list(key, value)?,
            "p" => self.p = scalar(key, value)?,
            "alpha" => self.alphas = list(key, value)?,
            "beta" => self.betas = list(key, value)?,
            "k" => self.ks = list(key, value)?,
            "seeds" => self.seeds = scalar(key, value)?,
            "base_seed" => self.base_seed = scalar(key, value)?,
            "algorithms" => self.algorithms = list(key, value)?,
            _ => return Err(BenchError::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |m: &str| Err(BenchError::Config(m.to_string()));
        if self.ns.is_empty() || self.ns.contains(&0) {
            return bad("n must list positive sizes");
        }
        if self.ks.is_empty() || self.ks.contains(&0) {
            return bad("k must list positive bounds");
        }
        if self.weights.is_empty() || self.alphas.is_empty() || self.betas.is_empty() || self.algorithms.is_empty() {
            return bad("weights, alpha, beta and algorithms must be nonempty");
        }
        if self.alphas.iter().chain(&self.betas).any(|x| !(x.is_finite() && *x >= 0.0)) {
            return bad("alpha and beta must be finite and nonnegative");
        }
        if !(0.0..=1.0).contains(&self.rho) || !(0.0..=1.0).contains(&self.p) {
            return bad("rho and p must lie in [0, 1]");
        }
        if self.class == GraphClass::Tree && (self.degree < 2 || self.emin > self.emax) {
            return bad("tree class needs degree >= 2 and emin <= emax");
        }
        Ok(())
    }

    /// The config as `key = value` lines, readable by [`Config::parse`].
    pub fn to_kv(&self) -> String {
        let join = |xs: Vec<String>| xs.join(",");
        let mut s = String::new();
        let mut put = |k: &str, v: String| s.push_str(&format!("{k} = {v}\n"));
        put("experiment", self.experiment.clone());
        put("class", self.class.name().into());
        put("n", join(self.ns.iter().map(ToString::to_string).collect()));
        put("rho", self.rho.to_string());
        put("degree", self.degree.to_string());
        put("emin", self.emin.to_string());
        put("emax", self.emax.to_string());
        put("weights", join(self.weights.iter().map(|w| w.name().to_string()).collect()));
        put("p", self.p.to_string());
        put("alpha", join(self.alphas.iter().map(ToString::to_string).collect()));
        put("beta", join(self.betas.iter().map(ToString::to_string).collect()));
        put("k", join(self.ks.iter().map(ToString::to_string).collect()));
        put("seeds", self.seeds.to_string());
        put("base_seed", self.base_seed.to_string());
        put("algorithms", join(self.algorithms.iter().map(|a| a.name().to_string()).collect()));
        s
    }
}

fn scalar<T: FromStr>(key: &str, value: &str) -> Result<T, BenchError> {
    value.parse().map_err(|_| BenchError::Config(format!("bad value '{value}' for {key}")))
}

fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, BenchError> {
    value.split(',').map(|x| x.trim()).filter(|x| !x.is_empty()).map(|x| scalar(key, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        assert_eq!(Config::preset(1).unwrap().ns, vec![10, 15, 20, 25]);
        assert_eq!(Config::preset(5).unwrap().degree, 40);
        assert!(Config::preset(6).is_err());
    }

    #[test]
    fn parse_overrides_preset() {
        let cfg =
            Config::parse("experiment = 3\n# comment\nn = 50, 60\nk = 1,3,5\nalgorithms = weighted,naive\n").unwrap();
        assert_eq!(cfg.class, GraphClass::Tree);
        assert_eq!(cfg.ns, vec![50, 60]);
        assert_eq!(cfg.ks, vec![1, 3, 5]);
        assert_eq!(cfg.algorithms, vec![Algorithm::Weighted, Algorithm::Naive]);
    }

    #[test]
    fn round_trip() {
        let cfg = Config::preset(2).unwrap();
        assert_eq!(Config::parse(&cfg.to_kv()).unwrap(), cfg);
    }

    #[test]
    fn rejects_unknown() {
        assert!(Config::parse("algorithms = dct").is_err());
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("n").is_err());
        assert!(Config::parse("k = 0").is_err());
    }
}
