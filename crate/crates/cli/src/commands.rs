use std::fs;
use std::io::Write;
use std::path::Path;

use rbm_sl_core::greedy::learn_full_graph;
use rbm_sl_core::harness::{
    calc_constants, run, sweep_scaling, verify_battery, Algorithm, ExperimentConfig, LearnerSpec, ModelSpec,
    SamplerMethod, SamplerSpec, SweepConfig, SweepMode,
};
use rbm_sl_core::model::{generate_model, ModelKind, RbmModel};
use rbm_sl_core::qsearch::GroverParams;
use rbm_sl_core::sampling::{self, exact_sample, gibbs_sample, GibbsConfig};
use rbm_sl_core::{Error, Result};

use crate::args::{
    ConstantsArgs, GenModelArgs, LearnArgs, LearnerArgs, ModelArgs, SampleArgs, SamplerArgs, SweepArgs, SweepModeArg,
    VerifyArgs,
};

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Ok,
    ChecksFailed,
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidConfig(format!("missing --{flag}")))
}

fn model_spec(args: &ModelArgs, base: Option<ModelSpec>) -> Result<ModelSpec> {
    let b = base.as_ref();
    Ok(ModelSpec {
        kind: required(args.kind.or(b.map(|s| s.kind)), "kind")?,
        n: required(args.n.or(b.map(|s| s.n)), "n")?,
        m: required(args.m.or(b.map(|s| s.m)), "m")?,
        d2: required(args.d2.or(b.map(|s| s.d2)), "d2")?,
        alpha: required(args.alpha.or(b.map(|s| s.alpha)), "alpha")?,
        beta: required(args.beta.or(b.map(|s| s.beta)), "beta")?,
        seed: args.model_seed.or(b.map(|s| s.seed)).unwrap_or(0),
    })
}

fn sampler_spec(args: &SamplerArgs, base: Option<SamplerSpec>) -> Result<SamplerSpec> {
    let b = base.as_ref();
    Ok(SamplerSpec {
        method: args.method.or(b.map(|s| s.method)).unwrap_or(SamplerMethod::Exact),
        samples: required(args.samples.or(b.map(|s| s.samples)), "samples")?,
        burn_in: args.burn_in.or(b.map(|s| s.burn_in)).unwrap_or(1000),
        thinning: args.thinning.or(b.map(|s| s.thinning)).unwrap_or(10),
    })
}

fn learner_spec(args: &LearnerArgs, base: Option<LearnerSpec>) -> Result<LearnerSpec> {
    let algorithm: Algorithm = required(args.algorithm.or(base.map(|s| s.algorithm)), "algorithm")?;
    let mut spec = base.unwrap_or_else(|| LearnerSpec::new(algorithm));
    spec.algorithm = algorithm;
    spec.eta = args.eta.or(spec.eta);
    spec.k = args.k.or(spec.k);
    spec.tau = args.tau.or(spec.tau);
    spec.t_max = args.t_max.or(spec.t_max);
    spec.delta = args.delta.unwrap_or(spec.delta);
    spec.zeta = args.zeta.unwrap_or(spec.zeta);
    spec.theory_defaults |= args.theory_defaults;
    Ok(spec)
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn gen_model(args: &GenModelArgs) -> Result<Outcome> {
    let spec = model_spec(&args.model, None)?;
    let model = generate_model(spec.kind, spec.n, spec.m, spec.d2, &spec.params()?, spec.seed)?;
    match &args.output {
        Some(path) => model.save(path)?,
        None => println!("{}", model.to_json()),
    }
    Ok(Outcome::Ok)
}

pub fn sample(args: &SampleArgs) -> Result<Outcome> {
    let model = RbmModel::load(&args.model).map_err(|e| e.context(format!("reading {}", args.model.display())))?;
    let spec = sampler_spec(&args.sampler, None)?;
    let samples = match spec.method {
        SamplerMethod::Exact => exact_sample(&model, spec.samples, args.seed)?,
        SamplerMethod::Gibbs => gibbs_sample(
            &model,
            spec.samples,
            &GibbsConfig {
                burn_in: spec.burn_in,
                thinning: spec.thinning,
                seed: args.seed,
            },
        )?,
    };
    sampling::save(&samples, &args.output)?;
    eprintln!(
        "wrote {} samples over {} visible nodes to {}",
        samples.len(),
        samples.node_count(),
        args.output.display()
    );
    Ok(Outcome::Ok)
}

pub fn learn(args: &LearnArgs) -> Result<Outcome> {
    if let Some(input) = &args.input {
        return learn_from_file(args, input);
    }
    let base = args.config.as_ref().map(ExperimentConfig::load).transpose()?;
    let b = base.as_ref();
    let config = ExperimentConfig {
        model: model_spec(&args.model, b.map(|c| c.model))?,
        sampler: sampler_spec(&args.sampler, b.map(|c| c.sampler))?,
        learner: learner_spec(&args.learner, b.map(|c| c.learner))?,
        trials: args.trials.or(b.map(|c| c.trials)).unwrap_or(1),
        seed: args.seed.or(b.map(|c| c.seed)).unwrap_or(0),
        output: args.output.clone().or(b.and_then(|c| c.output.clone())),
    };
    let out = run(&config)?;
    print_json(&out.metrics)?;
    Ok(Outcome::Ok)
}

fn learn_from_file(args: &LearnArgs, input: &Path) -> Result<Outcome> {
    let samples = sampling::load(input).map_err(|e| e.context(format!("reading {}", input.display())))?;
    let learner = learner_spec(&args.learner, None)?;
    let theory = learner.theory_defaults;
    let m = &args.model;
    let model = ModelSpec {
        kind: ModelKind::General,
        n: samples.node_count(),
        m: m.m.unwrap_or(0),
        d2: if theory { required(m.d2, "d2")? } else { m.d2.unwrap_or(1) },
        alpha: if theory { required(m.alpha, "alpha")? } else { m.alpha.unwrap_or(1.0) },
        beta: if theory { required(m.beta, "beta")? } else { m.beta.unwrap_or(1.0) },
        seed: 0,
    };
    let config = learner.resolve(&model, args.seed.unwrap_or(0))?;
    let estimate = learn_full_graph(&samples, &config)?;
    print_json(&estimate)?;
    Ok(Outcome::Ok)
}

pub fn sweep(args: &SweepArgs) -> Result<Outcome> {
    let config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            serde_json::from_str(&text).map_err(|e| Error::InvalidConfig(e.to_string()))?
        }
        None => SweepConfig {
            ns: args.ns.clone(),
            trials: args.trials,
            seed: args.seed,
            grover: GroverParams::default(),
            mode: match args.mode {
                SweepModeArg::Synthetic => SweepMode::Synthetic {
                    rho: args.rho,
                    cost: args.cost,
                },
                SweepModeArg::Learner => SweepMode::Learner {
                    kind: args.kind,
                    d2: args.d2,
                    alpha: args.alpha,
                    beta: args.beta,
                    samples: args.samples,
                    burn_in: args.burn_in,
                    thinning: args.thinning,
                    threshold: args.threshold,
                    iterations: args.iterations,
                    failure: args.failure,
                },
            },
        },
    };
    let result = sweep_scaling(&config)?;
    println!("n,classical_mean,classical_stderr,quantum_mean,quantum_stderr");
    let cell = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    for row in &result.rows {
        println!(
            "{},{},{},{},{}",
            row.n,
            cell(row.classical.mean),
            cell(row.classical.stderr),
            cell(row.quantum.mean),
            cell(row.quantum.stderr)
        );
    }
    eprintln!("classical slope {:.4}", result.classical_slope);
    eprintln!("quantum slope   {:.4}", result.quantum_slope);
    if let Some(path) = &args.output {
        fs::write(path, serde_json::to_string_pretty(&result)? + "\n")?;
    }
    Ok(Outcome::Ok)
}

pub fn constants(args: &ConstantsArgs) -> Result<Outcome> {
    let report = calc_constants(args.alpha, args.beta, args.d2, args.n, args.delta, args.zeta)?;
    if args.json {
        print_json(&report)?;
    } else {
        println!("{report}");
    }
    Ok(Outcome::Ok)
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let checks = verify_battery(args.seed);
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    Ok(if checks.iter().all(|c| c.passed) {
        Outcome::Ok
    } else {
        Outcome::ChecksFailed
    })
}
