//! apnlab: binary-field spectra and APN family construction.
//!
//! Exit codes: 0 success, 2 input/usage error, 3 hypothesis failure,
//! 4 not APN (1 is reserved for verify mismatches).

use apnlab_cli::family;
use apnlab_cli::ingest::load_sbox;
use apnlab_cli::opts::{Opts, RunConfig};
use apnlab_cli::scan::{bent_scan, Method};
use apnlab_core::spectrum::classes::walsh_monomial_by_classes;
use apnlab_core::spectrum::report::audit;
use apnlab_core::spectrum::{trace_monomial, walsh_fast, walsh_naive, VecFn, WalshSpectrum};
use apnlab_core::FieldSpec;
use serde_json::json;

const USAGE: &str = "\
apnlab - binary-field spectra and APN family construction

Usage:
  apnlab field info --n N [--poly HEX]
  apnlab walsh monomial --n N --i I [--a HEX] [--method naive|fast|classes]
  apnlab bent-scan --k-min A --k-max B [--method naive|fast|classes] [--override-caps]
  apnlab apn check (--monomial I | --sbox PATH) --n N [--override-caps]
  apnlab family build --name A_FAUX|A_OPTIMAL|B|C|D|E --n N [params...]
  apnlab family search --name ... --n N [--budget K]
  apnlab family verify --cert PATH
  apnlab bench walsh --n N --i I[,I...] [--reps R]

Common flags: --workers W, --out PATH, --override-caps.
The environment variable TOOL_MAX_N lifts size caps up to the given degree.

Family build parameters:
  A_FAUX/A_OPTIMAL: --i I --c HEX [--b HEX]
  B:                --s-exp S --b HEX --c HEX [--r HEX,HEX,...]
  C:                --i I --c HEX [--s-elem HEX]
  D:                --i I --c HEX [--t HEX]
  E:                [--i I] --j J --c HEX
";

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let opts = match Opts::parse(&args) {
        Ok(o) => o,
        Err(msg) => fail(2, &msg),
    };
    if opts.switch("help") || opts.positional.is_empty() {
        print!("{USAGE}");
        std::process::exit(if opts.switch("help") { 0 } else { 2 });
    }
    let config = match RunConfig::from_opts(&opts) {
        Ok(c) => c,
        Err(msg) => fail(2, &msg),
    };
    if let Some(w) = config.workers {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global();
    }
    let command: Vec<&str> = opts.positional.iter().map(|s| s.as_str()).collect();
    let result = match command.as_slice() {
        ["field", "info"] => cmd_field_info(&opts),
        ["walsh", "monomial"] => cmd_walsh_monomial(&opts),
        ["bent-scan"] => cmd_bent_scan(&opts, &config),
        ["apn", "check"] => cmd_apn_check(&opts, &config),
        ["family", "build"] => family::build(&opts),
        ["family", "search"] => family::search(&opts),
        ["family", "verify", rest @ ..] => {
            let path = opts
                .get("cert")
                .map(String::from)
                .or_else(|| rest.first().map(|s| s.to_string()));
            match path {
                Some(p) => family::verify(&p),
                None => Err((2, "family verify needs --cert PATH".to_string())),
            }
        }
        ["bench", "walsh"] => cmd_bench_walsh(&opts),
        _ => Err((
            2,
            format!("unknown command {:?}\n\n{USAGE}", command.join(" ")),
        )),
    };
    match result {
        Err((code, msg)) => fail(code, &msg),
        Ok((output, code)) => {
            match &config.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, output + "\n") {
                        fail(2, &format!("{path}: {e}"));
                    }
                }
                None => println!("{output}"),
            }
            std::process::exit(code);
        }
    }
}

fn fail(code: i32, msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(code);
}

type CmdResult = Result<(String, i32), (i32, String)>;

fn make_field(opts: &Opts) -> Result<FieldSpec, String> {
    let n = opts.u32_req("n")?;
    match opts.hex_opt("poly")? {
        Some(p) => FieldSpec::new(n, p).map_err(|e| e.to_string()),
        None => FieldSpec::with_default_poly(n).map_err(|e| e.to_string()),
    }
}

fn cmd_field_info(opts: &Opts) -> CmdResult {
    let run = (|| -> Result<String, String> {
        let field = make_field(opts)?;
        let n = field.degree();
        let divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
        let mut doc = json!({
            "n": n,
            "poly": format!("{:x}", field.reduction_poly()),
            "order": field.order(),
            "primitive_elem": format!("{:x}", field.primitive_elem().bits()),
            "subfield_degrees": divisors,
        });
        if n % 2 == 0 {
            let omega = field.find_omega().map_err(|e| e.to_string())?;
            doc["half_degree"] = json!(n / 2);
            doc["omega"] = json!(format!("{:x}", omega.bits()));
        }
        Ok(serde_json::to_string_pretty(&doc).expect("field info serializes"))
    })();
    run.map(|o| (o, 0)).map_err(|m| (2, m))
}

fn spectrum_summary(
    field: &FieldSpec,
    i: u64,
    a_bits: u64,
    method: &str,
) -> Result<String, String> {
    let a = field
        .try_elem(a_bits)
        .ok_or_else(|| format!("--a: {a_bits:#x} out of range"))?;
    let start = std::time::Instant::now();
    let spectrum: WalshSpectrum = match method {
        "classes" => {
            walsh_monomial_by_classes(field, a, i)
                .map_err(|e| e.to_string())?
                .spectrum
        }
        "fast" | "naive" => {
            let f = trace_monomial(field, a, i).map_err(|e| e.to_string())?;
            if method == "fast" {
                walsh_fast(field, &f).map_err(|e| e.to_string())?
            } else {
                walsh_naive(field, &f).map_err(|e| e.to_string())?
            }
        }
        other => return Err(format!("unknown method {other:?}")),
    };
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    let doc = json!({
        "n": field.degree(),
        "i": i,
        "a": format!("{:x}", a_bits),
        "method": method,
        "chi_zero": spectrum.chi_zero(),
        "walsh_max_abs": spectrum.max_abs(),
        "nonlinearity": spectrum.nonlinearity(),
        "is_bent": spectrum.is_bent_spectrum(),
        "parseval_ok": spectrum.verify_invariants(),
        "runtime_ms": runtime_ms,
    });
    Ok(serde_json::to_string_pretty(&doc).expect("summary serializes"))
}

fn cmd_walsh_monomial(opts: &Opts) -> CmdResult {
    let run = (|| -> Result<String, String> {
        let field = make_field(opts)?;
        let i = opts.u64_req("i")?;
        let a = opts.hex_opt("a")?.unwrap_or(1);
        let method = opts.get("method").unwrap_or("fast").to_string();
        spectrum_summary(&field, i, a, &method)
    })();
    run.map(|o| (o, 0)).map_err(|m| (2, m))
}

fn cmd_bent_scan(opts: &Opts, config: &RunConfig) -> CmdResult {
    let run = (|| -> Result<String, String> {
        let k_min = opts.u32_opt("k-min")?.unwrap_or(4);
        let k_max = opts.u32_opt("k-max")?.unwrap_or(12);
        let method = Method::parse(opts.get("method").unwrap_or("fast"))?;
        let report = bent_scan(k_min, k_max, method, config.caps_lifted_for(k_max))?;
        Ok(serde_json::to_string_pretty(&report).expect("scan report serializes"))
    })();
    run.map(|o| (o, 0)).map_err(|m| (2, m))
}

fn cmd_apn_check(opts: &Opts, config: &RunConfig) -> CmdResult {
    let run = (|| -> Result<String, String> {
        let (field, table, source) = match (opts.u64_opt("monomial")?, opts.get("sbox")) {
            (Some(i), None) => {
                let field = make_field(opts)?;
                let f = VecFn::power_map(&field, i);
                (field, f, format!("x^{i}"))
            }
            (None, Some(path)) => {
                let f = load_sbox(path, opts.u32_opt("n")?)?;
                let field = FieldSpec::with_default_poly(f.n()).map_err(|e| e.to_string())?;
                (field, f, path.to_string())
            }
            _ => return Err("pass exactly one of --monomial I or --sbox PATH".into()),
        };
        let lifted = config.caps_lifted_for(field.degree());
        let report = audit(&field, &table, &source, lifted).map_err(|e| e.to_string())?;
        Ok(serde_json::to_string_pretty(&report).expect("audit serializes"))
    })();
    run.map(|o| (o, 0)).map_err(|m| (2, m))
}

fn cmd_bench_walsh(opts: &Opts) -> CmdResult {
    let run = (|| -> Result<String, String> {
        let n = opts.u32_req("n")?;
        let exponents = opts.u64_list("i")?;
        let reps = opts.u64_opt("reps")?.unwrap_or(5) as usize;
        let rows = apnlab_cli::bench::bench_walsh(n, &exponents, reps)?;
        Ok(apnlab_cli::bench::to_csv(&rows).trim_end().to_string())
    })();
    run.map(|o| (o, 0)).map_err(|m| (2, m))
}
