//! Run settings: flags override the key=value config file, which overrides
//! the defaults.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use primint::primes::STRETCH_MAX;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format `{s}` (csv, json or text)")),
        }
    }
}

/// Values read from a config file, by key.
#[derive(Debug, Default)]
pub struct ConfigFile {
    path: PathBuf,
    values: BTreeMap<String, (usize, String)>,
}

pub const KEYS: [&str; 8] = ["max_x", "format", "output", "threads", "zeros", "delta", "points", "quiet"];

impl ConfigFile {
    /// `key = value` per line; `#` starts a comment.
    pub fn parse(text: &str, path: &Path) -> Result<ConfigFile, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| CliError::Config { path: path.to_path_buf(), line: i + 1, msg };
            let (k, v) = line.split_once('=').ok_or_else(|| bad("expected key = value".into()))?;
            let k = k.trim().replace('-', "_");
            if !KEYS.contains(&k.as_str()) {
                return Err(bad(format!("unknown key `{k}`")));
            }
            values.insert(k, (i + 1, v.trim().to_string()));
        }
        Ok(ConfigFile { path: path.to_path_buf(), values })
    }

    pub fn load(path: &Path) -> Result<ConfigFile, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
        ConfigFile::parse(&text, path)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse().map(Some).map_err(|e: T::Err| CliError::Config {
                path: self.path.clone(),
                line: *line,
                msg: format!("{key}: {e}"),
            }),
        }
    }
}

/// Parses integers written as `1e9` or `1000000000`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 {
        Ok(v as u64)
    } else {
        Err(format!("`{s}` is not a nonnegative integer"))
    }
}

/// Evaluation points: a comma list `2,10,1e6`, or a grid
/// `geom:LO:HI:N` (N points in geometric progression),
/// `lin:LO:HI:N` (N equally spaced points) or
/// `ratio:LO:HI:R` (LO, LO R, LO R^2, ... and HI).
#[derive(Clone, Debug, PartialEq)]
pub struct Points(pub Vec<f64>);

impl FromStr for Points {
    type Err = String;

    fn from_str(s: &str) -> Result<Points, String> {
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
        let pts = if let Some((kind, rest)) = s.split_once(':') {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(format!("grid `{s}` needs three fields after `{kind}:`"));
            }
            let (lo, hi) = (num(parts[0])?, num(parts[1])?);
            if !(lo > 0.0 && lo < hi && hi.is_finite()) {
                return Err(format!("grid `{s}`: need 0 < LO < HI"));
            }
            match kind {
                "geom" | "lin" => {
                    let n = parse_count(parts[2])? as usize;
                    if n < 2 {
                        return Err(format!("grid `{s}`: need at least two points"));
                    }
                    let mut v: Vec<f64> = (0..n)
                        .map(|i| {
                            let f = i as f64 / (n - 1) as f64;
                            if kind == "geom" {
                                lo * (hi / lo).powf(f)
                            } else {
                                lo + (hi - lo) * f
                            }
                        })
                        .collect();
                    v[n - 1] = hi;
                    v
                }
                "ratio" => {
                    let r = num(parts[2])?;
                    if r.partial_cmp(&1.0) != Some(std::cmp::Ordering::Greater) {
                        return Err(format!("grid `{s}`: ratio must exceed 1"));
                    }
                    let mut v = vec![lo];
                    while v[v.len() - 1] * r < hi {
                        v.push(v[v.len() - 1] * r);
                    }
                    v.push(hi);
                    v
                }
                _ => return Err(format!("unknown grid kind `{kind}` (geom, lin or ratio)")),
            }
        } else {
            s.split(',').filter(|t| !t.trim().is_empty()).map(num).collect::<Result<_, _>>()?
        };
        if pts.is_empty() {
            return Err("no points given".into());
        }
        if let Some(w) = pts.windows(2).find(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
            return Err(format!("points must be strictly ascending ({} then {})", w[0], w[1]));
        }
        if pts.iter().any(|x| !x.is_finite()) {
            return Err("points must be finite".into());
        }
        Ok(Points(pts))
    }
}

/// Settings shared by every subcommand, after merging.
#[derive(Clone, Debug)]
pub struct Settings {
    pub max_x: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
    pub zeros: Option<PathBuf>,
    pub delta: Option<f64>,
    pub points: Option<Points>,
    pub quiet: bool,
}

pub const DEFAULT_MAX_X: u64 = 1_000_000_000;

/// Flag values as given on the command line; `None` when absent.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub max_x: Option<u64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
    pub zeros: Option<PathBuf>,
    pub delta: Option<f64>,
    pub points: Option<Points>,
    pub quiet: bool,
}

impl Settings {
    pub fn merge(flags: Overrides, file: &ConfigFile) -> Result<Settings, CliError> {
        let max_x = match flags.max_x {
            Some(v) => v,
            None => match file.get::<String>("max_x")? {
                Some(s) => parse_count(&s).map_err(|msg| CliError::Usage(format!("max_x: {msg}")))?,
                None => DEFAULT_MAX_X,
            },
        };
        if max_x > STRETCH_MAX {
            return Err(CliError::Usage(format!("max-x {max_x} exceeds the supported maximum {STRETCH_MAX}")));
        }
        let quiet = flags.quiet || file.get::<bool>("quiet")?.unwrap_or(false);
        let settings = Settings {
            max_x,
            format: flags.format.or(file.get("format")?).unwrap_or(Format::Text),
            output: flags.output.or(file.get("output")?),
            threads: flags.threads.or(file.get("threads")?),
            zeros: flags.zeros.or(file.get("zeros")?),
            delta: flags.delta.or(file.get("delta")?),
            points: flags.points.or(file.get("points")?),
            quiet,
        };
        if settings.threads == Some(0) {
            return Err(CliError::Usage("threads must be at least 1".into()));
        }
        Ok(settings)
    }

    /// Points to evaluate, checked against the sieve range.
    pub fn points_or(&self, default: &[f64]) -> Result<Vec<f64>, CliError> {
        let pts = self.points.as_ref().map_or_else(|| default.to_vec(), |p| p.0.clone());
        if let Some(&x) = pts.iter().find(|&&x| x > self.max_x as f64) {
            return Err(CliError::Usage(format!("point {x} exceeds max-x {}", self.max_x)));
        }
        if let Some(&x) = pts.iter().find(|&&x| x < 2.0) {
            return Err(CliError::Usage(format!("point {x} is below 2")));
        }
        Ok(pts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_lists_and_grids() {
        assert_eq!("2,10,1e6".parse::<Points>().unwrap().0, vec![2.0, 10.0, 1e6]);
        let g: Points = "geom:10:1e4:4".parse().unwrap();
        assert_eq!(g.0.len(), 4);
        assert!((g.0[1] - 100.0).abs() < 1e-9 && g.0[3] == 1e4);
        assert_eq!("lin:2:4:3".parse::<Points>().unwrap().0, vec![2.0, 3.0, 4.0]);
        assert_eq!("ratio:2:10:2".parse::<Points>().unwrap().0, vec![2.0, 4.0, 8.0, 10.0]);
        assert!("10,2".parse::<Points>().is_err());
        assert!("geom:10:1:3".parse::<Points>().is_err());
        assert!("cubic:1:2:3".parse::<Points>().is_err());
        assert!("".parse::<Points>().is_err());
    }

    #[test]
    fn counts_in_scientific_notation() {
        assert_eq!(parse_count("1e9"), Ok(1_000_000_000));
        assert_eq!(parse_count("12345"), Ok(12345));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }

    #[test]
    fn flags_beat_file_beats_defaults() {
        let file = ConfigFile::parse("max_x = 1e6\nformat = json # comment\n\nthreads=2\n", Path::new("c")).unwrap();
        let s = Settings::merge(Overrides { format: Some(Format::Csv), ..Default::default() }, &file).unwrap();
        assert_eq!(s.max_x, 1_000_000);
        assert_eq!(s.format, Format::Csv);
        assert_eq!(s.threads, Some(2));
        assert_eq!(s.delta, None);
        let d = Settings::merge(Overrides::default(), &ConfigFile::default()).unwrap();
        assert_eq!(d.max_x, DEFAULT_MAX_X);
        assert_eq!(d.format, Format::Text);
    }

    #[test]
    fn bad_config_lines_name_their_line() {
        let e = ConfigFile::parse("max_x = 10\nwidth = 3\n", Path::new("c")).unwrap_err();
        assert!(matches!(e, CliError::Config { line: 2, .. }));
        let f = ConfigFile::parse("threads = many\n", Path::new("c")).unwrap();
        assert!(matches!(Settings::merge(Overrides::default(), &f), Err(CliError::Config { line: 1, .. })));
        let big = ConfigFile::parse("max_x = 1e11\n", Path::new("c")).unwrap();
        assert!(matches!(Settings::merge(Overrides::default(), &big), Err(CliError::Usage(_))));
    }
}
