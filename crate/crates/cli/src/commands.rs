use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use kstar_core::analysis::{bounds_plane_points, compare, era_histogram, write_plane_csv};
use kstar_core::generators::flower;
use kstar_core::transform::{space_sizes, SpaceSizes};
use kstar_core::{
    idealize, k_upper_estimate, ncd, verify_bounds, BitLz, BitString, BoundsReport, CodeLengthKind,
    DescriptionTable, Error, Estimate, GeneratorKind, GeneratorSpec, IdealityReport, KExact,
    Method, Program, RawGenerator,
};

use crate::format::{emit, json_line, pick, CliError, CliResult, Format};
use crate::{
    AnalyzeCommand, Cli, Command, GenCommand, GeneratorArgs, KCommand, TransformCommand, VmCommand,
};

use Format::{Csv, Json, Pbm, Text};

pub fn run(cli: &Cli) -> CliResult<()> {
    let data = match &cli.command {
        Command::Vm(c) => vm(c, cli.format)?,
        Command::K(c) => k(c, cli.format)?,
        Command::Gen(c) => gen(c, cli.format)?,
        Command::Transform(c) => transform(c, cli.format)?,
        Command::Analyze(c) => analyze(c, cli.format)?,
    };
    emit(cli.output.as_deref(), &data)
}

fn vm(cmd: &VmCommand, format: Option<Format>) -> CliResult<Vec<u8>> {
    match cmd {
        VmCommand::Run { program, input } => {
            let f = pick(format, &[Text, Json])?;
            let outcome = program.execute(input);
            let output = outcome.result.map_err(|fault| Error::NonTotal {
                input: input.clone(),
                fault,
            })?;
            match f {
                Json => {
                    #[derive(Serialize)]
                    struct Run<'a> {
                        program: &'a Program,
                        input: &'a BitString,
                        output: BitString,
                        bits_consumed: usize,
                    }
                    json_line(&Run {
                        program,
                        input,
                        output,
                        bits_consumed: outcome.bits_consumed,
                    })
                }
                _ => Ok(format!("{output}\n").into_bytes()),
            }
        }
        VmCommand::Decode { program } => {
            let f = pick(format, &[Text, Json])?;
            let mnemonics: Vec<&str> = program
                .instructions()
                .iter()
                .map(|i| i.mnemonic())
                .collect();
            let check = program.structural_check();
            match f {
                Json => {
                    #[derive(Serialize)]
                    struct Decoded<'a> {
                        program: &'a Program,
                        instructions: Vec<&'a str>,
                        live: usize,
                        arity: Option<usize>,
                        fault: Option<kstar_core::Fault>,
                    }
                    json_line(&Decoded {
                        program,
                        instructions: mnemonics,
                        live: program.live().len(),
                        arity: check.ok(),
                        fault: check.err(),
                    })
                }
                _ => {
                    let mut s = format!("instructions {}\n", mnemonics.join(" "));
                    let _ = writeln!(s, "live {}", program.live().len());
                    match check {
                        Ok(arity) => {
                            let _ = writeln!(s, "arity {arity}");
                        }
                        Err(fault) => {
                            let _ = writeln!(s, "fault {fault}");
                        }
                    }
                    Ok(s.into_bytes())
                }
            }
        }
    }
}

fn k(cmd: &KCommand, format: Option<Format>) -> CliResult<Vec<u8>> {
    match cmd {
        KCommand::Exact { artifact, cap } => {
            let f = pick(format, &[Text, Json])?;
            let result = kstar_core::k_exact(artifact, *cap)?;
            match (f, result) {
                (Json, KExact::Found(d)) => json_line(&d),
                (Json, KExact::ExceedsCap(cap)) => json_line(&serde_json::json!({
                    "artefact": artifact,
                    "k": serde_json::Value::Null,
                    "exceeds_cap": cap,
                })),
                (_, KExact::Found(d)) => {
                    Ok(format!("{}\nprogram {}\ninput {}\n", d.k, d.program, d.input).into_bytes())
                }
                (_, KExact::ExceedsCap(cap)) => Ok(format!(">{cap}\n").into_bytes()),
            }
        }
        KCommand::Table { cap } => {
            let f = pick(format, &[Json, Csv])?;
            let table = DescriptionTable::build(*cap)?;
            let mut buf = Vec::new();
            match f {
                Json => table.write_jsonl(&mut buf)?,
                _ => {
                    let mut w = csv::Writer::from_writer(&mut buf);
                    for d in table.sorted() {
                        w.serialize(&d).map_err(Error::from)?;
                    }
                    w.flush()?;
                }
            }
            Ok(buf)
        }
        KCommand::Estimate { artifact, ncd_with } => {
            let f = pick(format, &[Text, Json])?;
            let est = k_upper_estimate(artifact, &BitLz)?;
            let d = ncd_with
                .as_ref()
                .map(|b| ncd(artifact, b, &BitLz))
                .transpose()?;
            match f {
                Json => {
                    #[derive(Serialize)]
                    struct Out {
                        #[serde(flatten)]
                        estimate: Estimate,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        ncd: Option<f64>,
                    }
                    json_line(&Out {
                        estimate: est,
                        ncd: d,
                    })
                }
                _ => {
                    let mut s = format!("{}\n", est.estimate);
                    if let Some(d) = d {
                        let _ = writeln!(s, "ncd {d:.6}");
                    }
                    Ok(s.into_bytes())
                }
            }
        }
    }
}

fn build_generator(args: &GeneratorArgs) -> CliResult<GeneratorSpec> {
    let g = if let Some(p) = &args.program {
        GeneratorSpec::vm(p.clone())
    } else if let Some(size) = args.flower {
        GeneratorSpec::flower(size)?
    } else if let (Some(parts), Some(slots)) = (&args.parts, args.slots) {
        GeneratorSpec::oatmeal(parts.clone(), slots)?
    } else {
        return Err(CliError::Usage(
            "one of --program, --flower, --parts is required".into(),
        ));
    };
    Ok(match &args.label {
        Some(l) => g.with_label(l.clone()),
        None => g,
    })
}

#[derive(Serialize)]
struct GeneratorSummary {
    label: String,
    input_size: usize,
    code_length: usize,
    code_length_kind: CodeLengthKind,
    /// Present when the input space is small enough to sweep.
    ideality: Option<IdealityReport>,
    space_size: Option<usize>,
    ideal_by_construction: Option<bool>,
}

fn summarize(g: &GeneratorSpec) -> CliResult<GeneratorSummary> {
    let code = g.code_length();
    let enumerable = g.input_size() <= kstar_core::bitstring::DEFAULT_ENUMERATION_CAP;
    let ideality = if enumerable {
        Some(g.check_ideal()?)
    } else {
        None
    };
    let space_size = match &ideality {
        Some(r) if r.total => Some(g.enumerate_space()?.size()),
        _ => None,
    };
    Ok(GeneratorSummary {
        label: g.label().to_owned(),
        input_size: g.input_size(),
        code_length: code.bits,
        code_length_kind: code.kind,
        ideality,
        space_size,
        ideal_by_construction: g.ideal_by_construction(),
    })
}

fn summary_text(s: &GeneratorSummary) -> String {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    let mut out = String::new();
    let _ = writeln!(out, "label {}", s.label);
    let _ = writeln!(out, "input_size {}", s.input_size);
    let kind = match s.code_length_kind {
        CodeLengthKind::Exact => "exact",
        CodeLengthKind::Proxy => "proxy",
    };
    let _ = writeln!(out, "code_length {} ({kind})", s.code_length);
    if let Some(r) = &s.ideality {
        let _ = writeln!(out, "fixed_input {}", r.fixed_input);
        let _ = writeln!(out, "total {}", r.total);
        let _ = writeln!(out, "injective {}", r.injective);
        if let Some((a, b)) = &r.counterexample {
            let _ = writeln!(out, "counterexample {a} {b}");
        }
        if let Some(i) = &r.fault_input {
            let _ = writeln!(out, "fault_input {i}");
        }
    }
    let _ = writeln!(
        out,
        "space_size {}",
        opt(s.space_size.map(|v| v.to_string()))
    );
    out
}

fn gen(cmd: &GenCommand, format: Option<Format>) -> CliResult<Vec<u8>> {
    match cmd {
        GenCommand::Analyze { generator } => {
            let f = pick(format, &[Json, Text])?;
            let s = summarize(&build_generator(generator)?)?;
            match f {
                Json => json_line(&s),
                _ => Ok(summary_text(&s).into_bytes()),
            }
        }
        GenCommand::Flower { size, seed } => {
            let f = pick(format, &[Pbm, Text, Json])?;
            let pixels = flower(*size, seed)?;
            match f {
                Pbm => Ok(flower::to_pbm(&pixels, *size, *size)?.into_bytes()),
                Json => json_line(&serde_json::json!({
                    "size": size,
                    "seed": seed,
                    "artefact": pixels,
                })),
                _ => Ok(format!("{pixels}\n").into_bytes()),
            }
        }
        GenCommand::Oatmeal { parts, slots, seed } => {
            let f = pick(format, &[Text, Json])?;
            let a = kstar_core::generators::oatmeal(parts, *slots, seed)?;
            match f {
                Json => json_line(&serde_json::json!({
                    "parts": parts,
                    "slots": slots,
                    "seed": seed,
                    "artefact": a,
                })),
                _ => Ok(format!("{a}\n").into_bytes()),
            }
        }
    }
}

fn transform(cmd: &TransformCommand, format: Option<Format>) -> CliResult<Vec<u8>> {
    let TransformCommand::Idealize { program, max_input } = cmd;
    let f = pick(format, &[Json, Text])?;
    let raw = RawGenerator::from_program_up_to(program, *max_input)?;
    let g = idealize(&raw)?;
    let GeneratorKind::Idealized(ideal) = g.kind() else {
        unreachable!("idealize returns an idealized generator");
    };
    let sizes = space_sizes(ideal);
    let summary = summarize(&g)?;

    #[derive(Serialize)]
    struct Idealized {
        program: Program,
        max_input: usize,
        #[serde(flatten)]
        summary: GeneratorSummary,
        space: SpaceSizes,
    }
    match f {
        Json => json_line(&Idealized {
            program: program.clone(),
            max_input: *max_input,
            summary,
            space: sizes,
        }),
        _ => {
            let mut s = summary_text(&summary);
            let _ = writeln!(s, "encoded_domain {}", sizes.encoded_domain);
            let _ = writeln!(s, "total_domain {}", sizes.total_domain);
            Ok(s.into_bytes())
        }
    }
}

fn read_report(path: &Path) -> CliResult<BoundsReport> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: not a bounds report: {e}", path.display())))
}

fn analyze(cmd: &AnalyzeCommand, format: Option<Format>) -> CliResult<Vec<u8>> {
    match cmd {
        AnalyzeCommand::Bounds {
            generator,
            cap,
            estimate,
            samples,
            seed,
        } => {
            let f = pick(format, &[Json, Csv])?;
            let g = build_generator(generator)?;
            let report = if *estimate {
                verify_bounds(
                    &g,
                    &Method::Estimate {
                        compressor: &BitLz,
                        samples: *samples,
                        seed: *seed,
                    },
                )?
            } else {
                let cap = cap.unwrap_or(g.code_length().bits + g.input_size());
                let table = DescriptionTable::build(cap)?;
                verify_bounds(&g, &Method::Exact(&table))?
            };
            match f {
                Json => json_line(&report),
                _ => plane_csv(&[report]),
            }
        }
        AnalyzeCommand::Era {
            generator,
            samples,
            seed,
            bins,
        } => {
            let f = pick(format, &[Json, Csv])?;
            let g = build_generator(generator)?;
            let h = era_histogram(&g, *samples, *seed, *bins)?;
            match f {
                Json => json_line(&h),
                _ => Ok(h.to_csv().into_bytes()),
            }
        }
        AnalyzeCommand::Compare { from, to } => {
            let f = pick(format, &[Json, Text])?;
            let c = compare(&read_report(from)?, &read_report(to)?);
            match f {
                Json => json_line(&c),
                _ => {
                    let movement = serde_json::to_value(c.movement)?;
                    let mut s = format!(
                        "{} -> {}: {}\n",
                        c.from,
                        c.to,
                        movement.as_str().unwrap_or("?")
                    );
                    let _ = writeln!(s, "delta_code_length {}", c.delta_code_length);
                    let _ = writeln!(s, "delta_log2_space {}", c.delta_log2_space);
                    let _ = writeln!(s, "delta_k_star {}", c.delta_k_star);
                    let _ = writeln!(s, "k_star_kinds_match {}", c.k_star_kinds_match);
                    Ok(s.into_bytes())
                }
            }
        }
        AnalyzeCommand::Plane { reports } => {
            let f = pick(format, &[Csv, Json])?;
            let reports: Vec<BoundsReport> = reports
                .iter()
                .map(|p| read_report(p))
                .collect::<CliResult<_>>()?;
            match f {
                Json => json_line(&bounds_plane_points(&reports)),
                _ => plane_csv(&reports),
            }
        }
    }
}

fn plane_csv(reports: &[BoundsReport]) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    write_plane_csv(&bounds_plane_points(reports), &mut buf)?;
    Ok(buf)
}
