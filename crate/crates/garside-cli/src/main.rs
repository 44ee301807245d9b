//! Command-line surface over the garside toolkit: normal forms, conjugacy
//! invariants, curve scans, classification, family verification, benchmarks.
//!
//! Exit codes: 0 success, 1 domain error (or failing verification report),
//! 2 usage error, 3 resource-cap breach.

mod syntax;

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use garside::classify::{classify_nt, verify_verdict, ClassifyConfig, NtVerdict};
use garside::conjugacy::{
    cycling, cyclic_sliding, decycling, enumerate, is_rigid, preferred_prefix, transport,
};
use garside::curves::{all_round_curves, bgn_scan, image_of_round, BgnTrace, RoundCurve, ScanStep};
use garside::family::{psi, psi_word, verify_paper};
use garside::{
    BraidWord, ConjugacySet, EnumerationConfig, Error, NormalForm, PermutationBraid, SetKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "garside",
    version,
    about = "Garside-structure computations in braid groups",
    long_about = "Normal forms, super summit sets, sliding circuits, round-curve scans and \
                  a partial Nielsen-Thurston classifier for Artin braid groups.\n\
                  Words are whitespace-separated nonzero integers (k for a generator, -k for \
                  its inverse) with a repetition macro: \"(2 1)^7 (4)^6 3 (4)^3\"."
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Round-trip the command's JSON output and re-check it before printing
    #[arg(long, global = true)]
    verify: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Left normal form of a word
    Nf {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Normal form of the inverse
    Inv {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Product of two words
    Mul {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Conjugate g⁻¹ x g
    Conj {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(allow_hyphen_values = true)]
        conjugator: String,
    },
    /// One cycling step
    Cycle {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// One decycling step
    Decycle {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// One cyclic sliding step
    Slide {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Rigidity test and preferred prefix
    Rigid {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Enumerate the super summit set
    Sss {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
        /// Emit the conjugation graph in DOT format
        #[arg(long)]
        dot: bool,
        /// Member cap for the enumeration
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        /// Worker threads (output is identical for any value)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Enumerate the set of sliding circuits
    Sc {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
        /// Emit the conjugation graph in DOT format
        #[arg(long)]
        dot: bool,
        /// Member cap for the enumeration
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        /// Worker threads (output is identical for any value)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Transport of a simple conjugator along one cycling step
    Transport {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
        /// A positive word spelling a simple braid
        #[arg(allow_hyphen_values = true)]
        conjugator: String,
    },
    /// List round curves; with a word, their images under it
    Curves {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// BGN prefix scan of round curves through the normal form
    Bgn {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
        /// Scan a single curve "p,q" instead of all of them
        #[arg(long)]
        curve: Option<String>,
    },
    /// Partial Nielsen-Thurston classification
    Classify {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Scan every SC member instead of orbit representatives
        #[arg(long)]
        paranoid: bool,
    },
    /// Re-run the published family computations for one k
    Paper {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// CSV benchmark over a range of k
    Bench {
        #[arg(long, default_value_t = 2)]
        k_min: usize,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        /// Also enumerate the (exponentially growing) SSS
        #[arg(long)]
        sss: bool,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(match e {
                Error::MemberCapExceeded { .. } | Error::SlidingCapExceeded(_) => 3,
                _ => 1,
            });
        }
    }
}

fn parse(n: usize, word: &str) -> Result<BraidWord, Error> {
    syntax::parse_word(n, word)
}

fn run(cli: &Cli) -> Result<i32, Error> {
    match &cli.command {
        Command::Nf { n, word } => emit_nf(cli, NormalForm::from_word(&parse(*n, word)?)),
        Command::Inv { n, word } => {
            emit_nf(cli, NormalForm::from_word(&parse(*n, word)?).inverse())
        }
        Command::Mul { n, left, right } => {
            let x = NormalForm::from_word(&parse(*n, left)?);
            let y = NormalForm::from_word(&parse(*n, right)?);
            emit_nf(cli, x.mul(&y))
        }
        Command::Conj {
            n,
            word,
            conjugator,
        } => {
            let x = NormalForm::from_word(&parse(*n, word)?);
            let g = NormalForm::from_word(&parse(*n, conjugator)?);
            emit_nf(cli, x.conjugate(&g))
        }
        Command::Cycle { n, word } => {
            emit_nf(cli, cycling(&NormalForm::from_word(&parse(*n, word)?)))
        }
        Command::Decycle { n, word } => {
            emit_nf(cli, decycling(&NormalForm::from_word(&parse(*n, word)?)))
        }
        Command::Slide { n, word } => {
            emit_nf(cli, cyclic_sliding(&NormalForm::from_word(&parse(*n, word)?)))
        }
        Command::Rigid { n, word } => {
            let x = NormalForm::from_word(&parse(*n, word)?);
            let out = RigidOut {
                rigid: is_rigid(&x),
                preferred_prefix: preferred_prefix(&x),
            };
            if cli.verify {
                let back: RigidOut = round_trip(&out)?;
                if back.rigid != is_rigid(&x) || back.preferred_prefix != preferred_prefix(&x) {
                    return Err(Error::Internal("verification mismatch"));
                }
            }
            let text = format!(
                "rigid: {}\npreferred prefix: {}",
                out.rigid,
                word_or_dot(&out.preferred_prefix)
            );
            print_out(cli, &text, &out);
            Ok(0)
        }
        Command::Sss {
            n,
            word,
            dot,
            cap,
            jobs,
        } => emit_set(cli, SetKind::Sss, *n, word, *dot, *cap, *jobs),
        Command::Sc {
            n,
            word,
            dot,
            cap,
            jobs,
        } => emit_set(cli, SetKind::Sc, *n, word, *dot, *cap, *jobs),
        Command::Transport {
            n,
            word,
            conjugator,
        } => {
            let x = NormalForm::from_word(&parse(*n, word)?);
            let s = PermutationBraid::from_word(&parse(*n, conjugator)?).ok_or_else(|| {
                Error::WordSyntax("the conjugator must spell a simple braid".into())
            })?;
            let out = TransportOut {
                transport: transport(&x, &s)?,
            };
            if cli.verify {
                let back: TransportOut = round_trip(&out)?;
                if back.transport != out.transport {
                    return Err(Error::Internal("verification mismatch"));
                }
            }
            let text = format!("transport: {}", word_or_dot(&out.transport));
            print_out(cli, &text, &out);
            Ok(0)
        }
        Command::Curves { n, word } => {
            if *n < 2 {
                return Err(Error::StrandCount(*n));
            }
            let curves = all_round_curves(*n);
            match word {
                None => {
                    if cli.verify {
                        let back: Vec<RoundCurve> = round_trip(&curves)?;
                        if back != curves {
                            return Err(Error::Internal("verification mismatch"));
                        }
                    }
                    let text = curves
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join("\n");
                    print_out(cli, &text, &curves);
                }
                Some(word) => {
                    let x = NormalForm::from_word(&parse(*n, word)?);
                    let images: Vec<CurveImage> = curves
                        .iter()
                        .map(|c| CurveImage {
                            curve: *c,
                            image: image_of_round(&x, c),
                        })
                        .collect();
                    if cli.verify {
                        let back: Vec<CurveImage> = round_trip(&images)?;
                        for item in &back {
                            if image_of_round(&x, &item.curve) != item.image {
                                return Err(Error::Internal("verification mismatch"));
                            }
                        }
                    }
                    let text = images
                        .iter()
                        .map(|ci| match ci.image {
                            Some(img) => format!("{} -> {}", ci.curve, img),
                            None => format!("{} -> non-round", ci.curve),
                        })
                        .collect::<Vec<_>>()
                        .join("\n");
                    print_out(cli, &text, &images);
                }
            }
            Ok(0)
        }
        Command::Bgn { n, word, curve } => {
            let x = NormalForm::from_word(&parse(*n, word)?);
            let targets: Vec<RoundCurve> = match curve {
                Some(arg) => vec![parse_curve(*n, arg)?],
                None => all_round_curves(*n),
            };
            let traces: Vec<BgnTrace> = targets.iter().map(|c| bgn_scan(&x, c)).collect();
            if cli.verify {
                let back: Vec<BgnTrace> = round_trip(&traces)?;
                if back != traces {
                    return Err(Error::Internal("verification mismatch"));
                }
            }
            let text = traces
                .iter()
                .map(render_trace)
                .collect::<Vec<_>>()
                .join("\n");
            print_out(cli, &text, &traces);
            Ok(0)
        }
        Command::Classify {
            n,
            word,
            cap,
            jobs,
            paranoid,
        } => {
            let x = NormalForm::from_word(&parse(*n, word)?);
            let cfg = ClassifyConfig {
                enumeration: EnumerationConfig {
                    cap: *cap,
                    jobs: *jobs,
                },
                full_scan: *paranoid,
            };
            let verdict = classify_nt(&x, &cfg);
            if cli.verify {
                let back: NtVerdict = round_trip(&verdict)?;
                if !verify_verdict(&x, &back, &cfg) {
                    return Err(Error::Internal("evidence replay failed"));
                }
            }
            let text = render_verdict(&verdict);
            print_out(cli, &text, &verdict);
            Ok(0)
        }
        Command::Paper { k, cap, jobs } => {
            let cfg = EnumerationConfig {
                cap: *cap,
                jobs: *jobs,
            };
            let report = verify_paper(*k, &cfg)?;
            if cli.verify {
                let again = verify_paper(*k, &cfg)?;
                if serde_json::to_string(&again).unwrap() != serde_json::to_string(&report).unwrap()
                {
                    return Err(Error::Internal("verification mismatch"));
                }
            }
            print_out(cli, &report.to_string(), &report);
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Bench {
            k_min,
            k_max,
            sss,
            cap,
            jobs,
        } => {
            let csv = bench(*k_min, *k_max, *sss, *cap, *jobs)?;
            if cli.verify {
                let again = bench(*k_min, *k_max, *sss, *cap, *jobs)?;
                if strip_times(&again) != strip_times(&csv) {
                    return Err(Error::Internal("verification mismatch"));
                }
            }
            println!("{csv}");
            Ok(0)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RigidOut {
    rigid: bool,
    preferred_prefix: PermutationBraid,
}

#[derive(Serialize, Deserialize)]
struct TransportOut {
    transport: PermutationBraid,
}

#[derive(Serialize, Deserialize, PartialEq, Eq)]
struct CurveImage {
    curve: RoundCurve,
    image: Option<RoundCurve>,
}

fn round_trip<T: Serialize + for<'de> Deserialize<'de>>(value: &T) -> Result<T, Error> {
    let js = serde_json::to_string(value).map_err(|_| Error::Internal("serialization failed"))?;
    serde_json::from_str(&js).map_err(|_| Error::Internal("json round trip failed"))
}

fn print_out<T: Serialize>(cli: &Cli, text: &str, value: &T) {
    match cli.format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string(value).unwrap()),
    }
}

fn word_or_dot(s: &PermutationBraid) -> String {
    let w = s.to_word();
    if w.is_empty() {
        ".".into()
    } else {
        w.to_string()
    }
}

fn text_nf(x: &NormalForm) -> String {
    let mut out = format!(
        "n: {}\ninf: {}\nsup: {}\ncanonical length: {}",
        x.n(),
        x.inf(),
        x.sup(),
        x.canonical_length()
    );
    for (i, f) in x.factors().iter().enumerate() {
        out.push_str(&format!("\nfactor {}: {}", i + 1, f));
    }
    out
}

fn emit_nf(cli: &Cli, x: NormalForm) -> Result<i32, Error> {
    if cli.verify {
        let back: NormalForm = round_trip(&x)?;
        back.validate()?;
        if back != x {
            return Err(Error::Internal("verification mismatch"));
        }
    }
    print_out(cli, &text_nf(&x), &x);
    Ok(0)
}

fn emit_set(
    cli: &Cli,
    kind: SetKind,
    n: usize,
    word: &str,
    dot: bool,
    cap: usize,
    jobs: usize,
) -> Result<i32, Error> {
    let x = NormalForm::from_word(&parse(n, word)?);
    let cfg = EnumerationConfig { cap, jobs };
    let set = enumerate(kind, &x, &cfg)?;
    if cli.verify {
        let back: ConjugacySet = round_trip(&set)?;
        back.validate()?;
        if back != set {
            return Err(Error::Internal("verification mismatch"));
        }
    }
    if dot {
        println!("{}", set.to_dot());
        return Ok(0);
    }
    let mut text = format!(
        "kind: {}\nmembers: {}\nedges: {}\ninf: {}\nsup: {}",
        set.kind,
        set.size(),
        set.edges.len(),
        set.inf,
        set.sup
    );
    for m in &set.members {
        text.push_str(&format!("\n{m}"));
    }
    print_out(cli, &text, &set);
    Ok(0)
}

fn parse_curve(n: usize, arg: &str) -> Result<RoundCurve, Error> {
    let parts: Vec<&str> = arg.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::WordSyntax(format!(
            "expected a curve as `p,q`, got `{arg}`"
        )));
    }
    let p = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::WordSyntax(format!("bad curve `{arg}`")))?;
    let q = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::WordSyntax(format!("bad curve `{arg}`")))?;
    RoundCurve::new(n, p, q)
}

fn render_trace(trace: &BgnTrace) -> String {
    let mut lines = vec![format!("curve {}:", trace.curve)];
    for step in &trace.steps {
        match step {
            ScanStep::DeltaPower { exponent, image } => {
                lines.push(format!("  D^{exponent}: round {image}"));
            }
            ScanStep::Factor { index, image } => match image {
                Some(c) => lines.push(format!("  factor {index}: round {c}")),
                None => lines.push(format!("  factor {index}: non-round (exit)")),
            },
        }
    }
    match trace.final_image {
        Some(c) => lines.push(format!("  final: round {c}")),
        None => lines.push("  final: non-round".into()),
    }
    lines.join("\n")
}

fn render_verdict(verdict: &NtVerdict) -> String {
    match verdict {
        NtVerdict::Periodic {
            exponent,
            delta_power,
        } => format!("verdict: Periodic\nevidence: x^{exponent} = D^{delta_power}"),
        NtVerdict::PseudoAnosovCertified(ev) => format!(
            "verdict: PseudoAnosovCertified\nevidence: SC of size {} scanned ({} members, {} curves, full scan {}), no round curve maps to a round curve",
            ev.sc_size, ev.members_scanned, ev.curves_checked, ev.full_scan
        ),
        NtVerdict::ReducibleCertified(ev) => {
            let cycle = ev
                .curve_cycle
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" -> ");
            format!(
                "verdict: ReducibleCertified\nevidence: SC member {} cycles the disjoint family {}",
                ev.member, cycle
            )
        }
        NtVerdict::Unknown { reason } => format!("verdict: Unknown\nreason: {reason}"),
    }
}

fn bench(
    k_min: usize,
    k_max: usize,
    with_sss: bool,
    cap: usize,
    jobs: usize,
) -> Result<String, Error> {
    let cfg = EnumerationConfig { cap, jobs };
    let mut out = String::from("k,canonical_length,sss_size,sc_size,wall_time_ms");
    for k in k_min..=k_max {
        let start = Instant::now();
        let x = psi(k)?;
        debug_assert_eq!(x, NormalForm::from_word(&psi_word(k)?));
        let sc = enumerate(SetKind::Sc, &x, &cfg)?;
        let sss_size = if with_sss {
            enumerate(SetKind::Sss, &x, &cfg)?.size().to_string()
        } else {
            String::new()
        };
        let ms = start.elapsed().as_millis();
        out.push_str(&format!(
            "\n{},{},{},{},{}",
            k,
            x.canonical_length(),
            sss_size,
            sc.size(),
            ms
        ));
    }
    Ok(out)
}

fn strip_times(csv: &str) -> String {
    csv.lines()
        .map(|l| l.rsplit_once(',').map(|(head, _)| head).unwrap_or(l))
        .collect::<Vec<_>>()
        .join("\n")
}
