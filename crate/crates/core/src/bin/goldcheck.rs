//! Development check: build catalogs for the golden configurations and a
//! sweep sample; report involution and signature outcomes.

use std::time::Instant;

use twistforge_core::catalog::{build_catalog, validate_catalog, GOLDEN_SIGNATURES};
use twistforge_core::config::parse_spec;
use twistforge_core::meyer::{fibration_signature, ConventionFlags};
use twistforge_core::words::theta_word;

fn main() {
    let flags = ConventionFlags::calibrated();
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.first().map(String::as_str) == Some("--sweep") {
        let bound: u32 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(6);
        let n: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3);
        let specs = twistforge_core::invariants::enumerate_specs_by_total(n, bound);
        println!("{} specs with h+k <= {bound}, n <= {n}", specs.len());
        let t0 = Instant::now();
        let rows = twistforge_core::invariants::conjecture_scan(n, bound, bound, &flags);
        let rows: Vec<_> = rows
            .into_iter()
            .filter(|r| {
                let spec = parse_spec(&r.spec).unwrap();
                spec.horizontal_genus() + spec.vertical_genus() <= bound
            })
            .collect();
        let errors: Vec<_> = rows.iter().filter(|r| r.error.is_some()).collect();
        let mismatches: Vec<_> =
            rows.iter().filter(|r| r.matches == Some(false)).collect();
        println!(
            "scanned {} rows in {:?}; {} errors, {} mismatches",
            rows.len(),
            t0.elapsed(),
            errors.len(),
            mismatches.len()
        );
        for e in errors.iter().take(10) {
            println!("ERROR {}: {:?}", e.spec, e.error);
        }
        for m in mismatches.iter().take(10) {
            println!("MISMATCH {}: sigma {:?} vs {}", m.spec, m.sigma, m.conjectured);
        }
        return;
    }
    if let Some(spec_str) = args.first() {
        let spec = parse_spec(spec_str).unwrap();
        let t0 = Instant::now();
        match build_catalog(&spec) {
            Ok(catalog) => {
                let word = theta_word(&spec).unwrap();
                let sigma = fibration_signature(&word.squared(), &catalog, &flags);
                println!("{spec_str}: built in {:?}, sigma = {sigma:?}", t0.elapsed());
                let report = validate_catalog(&catalog).unwrap();
                print!("{report}");
            }
            Err(e) => println!("{spec_str}: FAILED {e} after {:?}", t0.elapsed()),
        }
        return;
    }
    for (spec_str, expected) in GOLDEN_SIGNATURES {
        let spec = parse_spec(spec_str).unwrap();
        let t0 = Instant::now();
        match build_catalog(&spec) {
            Ok(catalog) => {
                let word = theta_word(&spec).unwrap();
                let sigma = fibration_signature(&word.squared(), &catalog, &flags);
                let built = t0.elapsed();
                println!(
                    "{spec_str}: sigma = {sigma:?} (expected {expected}), built+checked in {:?}",
                    built
                );
            }
            Err(e) => println!("{spec_str}: FAILED {e} after {:?}", t0.elapsed()),
        }
    }
}

#[allow(dead_code)]
fn sweep_probe() {}
