//! Flag parsing for the command line: `--key value` pairs, bare `--flag`
//! switches and positional words, collected in order.

use std::collections::BTreeMap;

#[derive(Debug, Default)]
pub struct Opts {
    pub positional: Vec<String>,
    values: BTreeMap<String, String>,
    switches: Vec<String>,
}

/// Flags that take no value.
const SWITCHES: &[&str] = &["override-caps", "help"];

impl Opts {
    pub fn parse(args: &[String]) -> Result<Opts, String> {
        let mut out = Opts::default();
        let mut it = args.iter().peekable();
        while let Some(arg) = it.next() {
            if let Some(key) = arg.strip_prefix("--") {
                if SWITCHES.contains(&key) {
                    out.switches.push(key.to_string());
                } else {
                    let value = it
                        .next()
                        .ok_or_else(|| format!("flag --{key} expects a value"))?;
                    out.values.insert(key.to_string(), value.clone());
                }
            } else {
                out.positional.push(arg.clone());
            }
        }
        Ok(out)
    }

    pub fn switch(&self, name: &str) -> bool {
        self.switches.iter().any(|s| s == name)
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(|s| s.as_str())
    }

    pub fn require(&self, name: &str) -> Result<&str, String> {
        self.get(name).ok_or_else(|| format!("missing --{name}"))
    }

    pub fn u32_opt(&self, name: &str) -> Result<Option<u32>, String> {
        self.get(name)
            .map(|v| v.parse::<u32>().map_err(|e| format!("--{name}: {e}")))
            .transpose()
    }

    pub fn u32_req(&self, name: &str) -> Result<u32, String> {
        self.u32_opt(name)?
            .ok_or_else(|| format!("missing --{name}"))
    }

    pub fn u64_opt(&self, name: &str) -> Result<Option<u64>, String> {
        self.get(name)
            .map(|v| v.parse::<u64>().map_err(|e| format!("--{name}: {e}")))
            .transpose()
    }

    pub fn u64_req(&self, name: &str) -> Result<u64, String> {
        self.u64_opt(name)?
            .ok_or_else(|| format!("missing --{name}"))
    }

    pub fn hex_opt(&self, name: &str) -> Result<Option<u64>, String> {
        self.get(name)
            .map(|v| {
                let t = v.trim().trim_start_matches("0x").trim_start_matches("0X");
                u64::from_str_radix(t, 16).map_err(|e| format!("--{name}: {e}"))
            })
            .transpose()
    }

    pub fn hex_req(&self, name: &str) -> Result<u64, String> {
        self.hex_opt(name)?
            .ok_or_else(|| format!("missing --{name}"))
    }

    /// Comma-separated u64 list.
    pub fn u64_list(&self, name: &str) -> Result<Vec<u64>, String> {
        match self.get(name) {
            None => Ok(Vec::new()),
            Some(v) => v
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u64>()
                        .map_err(|e| format!("--{name}: {e}"))
                })
                .collect(),
        }
    }

    /// Comma-separated hex list.
    pub fn hex_list(&self, name: &str) -> Result<Vec<u64>, String> {
        match self.get(name) {
            None => Ok(Vec::new()),
            Some(v) => v
                .split(',')
                .map(|p| {
                    let t = p.trim().trim_start_matches("0x").trim_start_matches("0X");
                    u64::from_str_radix(t, 16).map_err(|e| format!("--{name}: {e}"))
                })
                .collect(),
        }
    }
}

/// Per-run execution settings shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub workers: Option<usize>,
    pub override_caps: bool,
    /// TOOL_MAX_N: degrees up to this value are exempt from the default caps.
    pub max_n_env: Option<u32>,
    pub out: Option<String>,
}

impl RunConfig {
    pub fn from_opts(opts: &Opts) -> Result<RunConfig, String> {
        let workers = opts
            .get("workers")
            .map(|v| v.parse::<usize>().map_err(|e| format!("--workers: {e}")))
            .transpose()?;
        if workers == Some(0) {
            return Err("--workers must be at least 1".into());
        }
        let max_n_env = std::env::var("TOOL_MAX_N")
            .ok()
            .map(|v| v.parse::<u32>().map_err(|e| format!("TOOL_MAX_N: {e}")))
            .transpose()?;
        Ok(RunConfig {
            workers,
            override_caps: opts.switch("override-caps"),
            max_n_env,
            out: opts.get("out").map(String::from),
        })
    }

    /// Caps are lifted either by --override-caps or by TOOL_MAX_N >= n.
    pub fn caps_lifted_for(&self, n: u32) -> bool {
        self.override_caps || self.max_n_env.is_some_and(|m| m >= n)
    }
}
