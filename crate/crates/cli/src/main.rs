use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use vck_core::algebra::named_pair;
use vck_core::cocycle::{
    universal_presentation_with_budget, CocycleFile, CocyclePair, PresentedPair, Target, DEFAULT_TIETZE_BUDGET,
};
use vck_core::coloring::{colorings, count_colorings};
use vck_core::diagram::{catalog_text, LinkDiagram};
use vck_core::enumerate::write_keys;
use vck_core::fpgroup::DEFAULT_MAX_GENS;
use vck_core::invariant::{checked_state_sum, weight_product, word_invariant};
use vck_core::io::parse_solution_file;
use vck_core::report::{self, universal_text};
use vck_core::{
    as_biquandle, enumerate_involutive, enumerate_virtual_pairs, find_homs, EnumerateError, FiniteGroup, FpError,
    PairMode, Presentation, VirtualPair,
};

#[derive(Parser)]
#[command(name = "vck", version, about = "Virtual pairs, universal cocycle groups and conjugacy invariants of virtual links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    All,
    Aut,
    Involutive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Lines,
}

#[derive(Subcommand)]
enum Command {
    /// Check a solution file, a virtual pair or a cocycle pair against the axioms.
    Check {
        /// Solution file (one or two tables) or pair name.
        #[arg(long, required_unless_present = "cocycle")]
        pair: Option<String>,
        /// Cocycle-pair file or bundled name.
        #[arg(long)]
        cocycle: Option<String>,
        /// Directory of group-table files replacing the default battery.
        #[arg(long)]
        battery: Option<PathBuf>,
    },
    /// Enumerate virtual pairs (or involutive solutions) up to isomorphism.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        /// With `--mode involutive`: keep only solutions compatible with the flip.
        #[arg(long)]
        flip_compatible: bool,
        /// Allow long-running sizes.
        #[arg(long)]
        long: bool,
        /// Write the canonical keys of the classes to this file.
        #[arg(long)]
        keys: Option<PathBuf>,
    },
    /// Count or list the colorings of a diagram (colors printed 1-based).
    Color {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        pair: String,
        #[arg(long)]
        list: bool,
    },
    /// Evaluate the conjugacy invariant of a diagram.
    Invariant {
        #[arg(long)]
        diagram: String,
        #[arg(long, required_unless_present = "cocycle")]
        pair: Option<String>,
        /// Cocycle-pair file or bundled name; the universal pair is used otherwise.
        #[arg(long, conflicts_with = "universal")]
        cocycle: Option<String>,
        #[arg(long)]
        universal: bool,
        #[arg(long)]
        battery: Option<PathBuf>,
        /// Abelian state sum instead of the conjugacy invariant (finite cocycle only).
        #[arg(long)]
        state_sum: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Universal coefficient group of a virtual pair.
    Unc {
        #[arg(long)]
        pair: String,
        /// Tietze step budget.
        #[arg(long, default_value_t = DEFAULT_TIETZE_BUDGET)]
        budget: usize,
        /// Also verify every axiom instance against the simplified group.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        battery: Option<PathBuf>,
    },
    /// Homomorphisms from a presentation into a finite group.
    Homs {
        /// Presentation file, or a pair name for its universal group.
        #[arg(long)]
        presentation: String,
        /// Battery group name or group-table file.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = DEFAULT_MAX_GENS)]
        max_gens: usize,
        #[arg(long)]
        list: bool,
    },
    /// Census table of virtual pairs for n = 2..max-n.
    Census {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long)]
        long: bool,
    },
    /// Regenerate a table and compare it with its golden file.
    Reproduce {
        /// census, kishino, vlinks, unc-flip, pair248, quaternion, two-component or all.
        target: String,
        /// Overwrite the golden file with the new output.
        #[arg(long)]
        bless: bool,
        #[arg(long)]
        long: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Validation(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Validation(m) | Failure::Budget(m) => m,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Validation(e.to_string())
}

impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Self {
        match e {
            EnumerateError::LongRunning { .. } => Failure::Budget(format!("{e}; pass --long")),
            EnumerateError::SizeOutOfRange { .. } => Failure::Usage(e.to_string()),
            _ => invalid(e),
        }
    }
}

impl From<FpError> for Failure {
    fn from(e: FpError) -> Self {
        match e {
            FpError::TooManyGenerators { .. } => Failure::Budget(e.to_string()),
            _ => invalid(e),
        }
    }
}

impl From<report::ReportError> for Failure {
    fn from(e: report::ReportError) -> Self {
        match e {
            report::ReportError::Unknown(_) => Failure::Usage(e.to_string()),
            report::ReportError::Enumerate(e) => e.into(),
            report::ReportError::Fp(e) => e.into(),
            e => invalid(e),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn data_dir() -> PathBuf {
    std::env::var_os("VCK_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data"))
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// A file path, else `<data>/<kind>/<name>.txt`.
fn data_file(kind: &str, spec: &str) -> Option<PathBuf> {
    let p = PathBuf::from(spec);
    if p.is_file() {
        return Some(p);
    }
    let q = data_dir().join(kind).join(format!("{spec}.txt"));
    q.is_file().then_some(q)
}

fn load_diagram(spec: &str) -> Res<LinkDiagram> {
    let text = match data_file("diagrams", spec) {
        Some(p) => vck_core::diagram::strip_comments(&read(&p)?),
        None => catalog_text(spec).ok_or_else(|| Failure::Usage(format!("no diagram file or catalog entry '{spec}'")))?,
    };
    LinkDiagram::parse(&text).map_err(invalid)
}

fn load_tables(spec: &str) -> Res<Option<(vck_core::SolutionTable, Option<vck_core::SolutionTable>)>> {
    match data_file("pairs", spec) {
        Some(p) => Ok(Some(parse_solution_file(&read(&p)?).map_err(invalid)?)),
        None => Ok(None),
    }
}

fn load_pair(spec: &str) -> Res<VirtualPair> {
    match load_tables(spec)? {
        Some((s, Some(beta))) => VirtualPair::from_tables(s, beta).map_err(invalid),
        Some((_, None)) => Err(Failure::Usage(format!("'{spec}' holds a single table; a pair needs S and beta"))),
        None => named_pair(spec).map_err(|e| match e {
            vck_core::AlgebraError::UnknownName(_) => Failure::Usage(format!("no pair file or name '{spec}'")),
            e => invalid(e),
        }),
    }
}

enum Loaded {
    Finite(CocyclePair<FiniteGroup>),
    Presented(PresentedPair),
}

impl Loaded {
    fn vp(&self) -> &VirtualPair {
        match self {
            Loaded::Finite(cp) => &cp.vp,
            Loaded::Presented(pp) => &pp.vp,
        }
    }
}

fn load_cocycle(spec: &str) -> Res<Loaded> {
    let text = match data_file("cocycles", spec) {
        Some(p) => read(&p)?,
        None => vck_core::cocycle::named_cocycle_text(spec)
            .ok_or_else(|| Failure::Usage(format!("no cocycle file or name '{spec}'")))?
            .to_string(),
    };
    let file = CocycleFile::parse(&text).map_err(invalid)?;
    let target = match data_file("groups", &file.target) {
        Some(p) => Target::parse(&read(&p)?),
        None => Target::parse(&file.target),
    }
    .map_err(invalid)?;
    Ok(match target {
        Target::Finite(g) => Loaded::Finite(file.finite(&g).map_err(invalid)?),
        Target::Presented(p) => {
            let (f, g) = file.words(&p).map_err(invalid)?;
            Loaded::Presented(PresentedPair { vp: file.vp, presentation: p, f, g })
        }
    })
}

fn load_group(spec: &str) -> Res<FiniteGroup> {
    if let Some(g) = FiniteGroup::by_name(spec) {
        return Ok(g);
    }
    let p = data_file("groups", spec).ok_or_else(|| Failure::Usage(format!("no group name or file '{spec}'")))?;
    let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    FiniteGroup::parse(&name, &read(&p)?).map_err(invalid)
}

fn load_battery(dir: Option<&Path>) -> Res<Vec<FiniteGroup>> {
    let Some(dir) = dir else { return Ok(FiniteGroup::battery()) };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| invalid(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            FiniteGroup::parse(&name, &read(p)?).map_err(invalid)
        })
        .collect()
}

fn run_check(pair: Option<String>, cocycle: Option<String>, battery: Option<PathBuf>) -> Res<String> {
    let mut out = String::new();
    if let Some(spec) = pair {
        match load_tables(&spec)? {
            Some((s, None)) => {
                as_biquandle(s).map_err(|e| invalid(format!("biquandle: INVALID: {e}")))?;
                out.push_str("biquandle: OK\n");
            }
            Some((s, Some(beta))) => {
                VirtualPair::from_tables(s, beta).map_err(|e| invalid(format!("virtual pair: INVALID: {e}")))?;
                out.push_str("virtual pair: OK\n");
            }
            None => {
                load_pair(&spec).map_err(|f| match f {
                    Failure::Validation(m) => invalid(format!("virtual pair: INVALID: {m}")),
                    f => f,
                })?;
                out.push_str("virtual pair: OK\n");
            }
        }
    }
    if let Some(spec) = cocycle {
        match load_cocycle(&spec)? {
            Loaded::Finite(cp) => {
                let bad = cp.check();
                if !bad.is_empty() {
                    let list: Vec<String> = bad.iter().take(10).map(ToString::to_string).collect();
                    return Err(invalid(format!(
                        "{out}cocycle pair: INVALID: {} failing instances, first: {}",
                        bad.len(),
                        list.join("; ")
                    )));
                }
                out.push_str("cocycle pair: OK (exact)\n");
            }
            Loaded::Presented(pp) => {
                let rep = pp.check(&load_battery(battery.as_deref())?, DEFAULT_MAX_GENS).map_err(invalid)?;
                if !rep.is_valid() {
                    let list: Vec<String> =
                        rep.violations.iter().take(10).map(|(v, g)| format!("{v} in {g}")).collect();
                    return Err(invalid(format!(
                        "{out}cocycle pair: INVALID: {} failing instances, first: {}",
                        rep.violations.len(),
                        list.join("; ")
                    )));
                }
                let how = if rep.battery_verified == 0 { "exact" } else { "battery-verified" };
                out.push_str(&format!(
                    "cocycle pair: OK ({how}: {} literal, {} relator conjugates, {} battery-verified)\n",
                    rep.literal, rep.relator_conjugates, rep.battery_verified
                ));
            }
        }
    }
    Ok(out)
}

fn run_enumerate(n: usize, mode: Mode, flip_compatible: bool, long: bool, keys: Option<PathBuf>) -> Res<String> {
    let write = |write: &dyn Fn(&mut fs::File) -> std::io::Result<()>| -> Res<()> {
        if let Some(path) = &keys {
            let mut f = fs::File::create(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            write(&mut f).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    };
    match mode {
        Mode::Involutive => {
            let classes = enumerate_involutive(n, flip_compatible, long)?;
            write(&|f| write_keys(f, &classes))?;
            let what = if flip_compatible { "involutive solutions compatible with the flip" } else { "involutive solutions" };
            Ok(format!("n={n} {what}: {}\n", classes.len()))
        }
        Mode::All | Mode::Aut => {
            if flip_compatible {
                return Err(Failure::Usage("--flip-compatible applies to --mode involutive".into()));
            }
            let pm = if matches!(mode, Mode::All) { PairMode::All } else { PairMode::AutInduced };
            let classes = enumerate_virtual_pairs(n, pm, long)?;
            write(&|f| write_keys(f, &classes))?;
            let connected = classes.iter().filter(|c| c.representative.is_connected()).count();
            let involutive = classes.iter().filter(|c| c.representative.is_involutive()).count();
            let label = if matches!(mode, Mode::All) { "virtual pairs" } else { "aut-induced pairs" };
            Ok(format!("n={n} {label}: {}\nconnected: {connected}\ninvolutive beta: {involutive}\n", classes.len()))
        }
    }
}

fn colors_text(c: &[usize]) -> String {
    c.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn run_color(diagram: &str, pair: &str, list: bool) -> Res<String> {
    let d = load_diagram(diagram)?;
    let vp = load_pair(pair)?;
    if !list {
        return Ok(format!("{}\n", count_colorings(&d, &vp)));
    }
    let all = colorings(&d, &vp);
    let mut out = format!("# {} colorings of {} semi-arcs\n", all.len(), d.num_arcs());
    for c in all {
        out.push_str(&colors_text(&c));
        out.push('\n');
    }
    Ok(out)
}

fn least_in_class(g: &FiniteGroup) -> Vec<usize> {
    let mut least = vec![usize::MAX; g.num_classes()];
    for a in 0..g.order() {
        let c = g.class_of(a);
        least[c] = least[c].min(a);
    }
    least
}

fn multiset_text(tuples: &[Vec<String>]) -> String {
    format!("multiset: {}\n", report::format_multiset(tuples))
}

fn run_invariant(
    diagram: &str,
    pair: Option<String>,
    cocycle: Option<String>,
    battery: Option<PathBuf>,
    state_sum: bool,
    format: Format,
) -> Res<String> {
    let d = load_diagram(diagram)?;
    let loaded = match &cocycle {
        Some(spec) => load_cocycle(spec)?,
        None => {
            let vp = load_pair(pair.as_deref().expect("clap requires --pair without --cocycle"))?;
            let up = universal_presentation_with_budget(&vp, DEFAULT_TIETZE_BUDGET);
            Loaded::Presented(PresentedPair::from(&up))
        }
    };
    if let (Some(spec), Some(_)) = (&pair, &cocycle) {
        if &load_pair(spec)? != loaded.vp() {
            return Err(invalid(format!("the cocycle file is over a different pair than '{spec}'")));
        }
    }
    let lines = format == Format::Lines;
    let mut out = String::new();
    match loaded {
        Loaded::Finite(cp) => {
            let g = &cp.group;
            if state_sum {
                let sums = checked_state_sum(&d, &cp).map_err(invalid)?;
                for (e, k) in sums {
                    out.push_str(&format!("{}\t{k}\n", g.label(e)));
                }
                return Ok(out);
            }
            let least = least_in_class(g);
            let mut tuples = Vec::new();
            for (i, c) in colorings(&d, &cp.vp).iter().enumerate() {
                let wp = weight_product(&d, c, &cp).map_err(invalid)?;
                let t: Vec<String> = wp.products.iter().map(|&e| g.label(least[g.class_of(e)]).to_string()).collect();
                if lines {
                    out.push_str(&format!("{i}\t({})\n", t.join(", ")));
                } else {
                    out.push_str(&format!("{i}\t[{}]\t({})\n", colors_text(c), t.join(", ")));
                }
                tuples.push(t);
            }
            if !lines {
                out.push_str(&format!("colorings: {}\n", tuples.len()));
                out.push_str(&multiset_text(&tuples));
            }
        }
        Loaded::Presented(pp) => {
            if state_sum {
                return Err(Failure::Usage("--state-sum needs a cocycle pair over a finite abelian group".into()));
            }
            let mut inv = word_invariant(&d, &pp).map_err(invalid)?;
            inv.rows.sort_by(|a, b| a.coloring.cmp(&b.coloring));
            let p = &pp.presentation;
            if !lines {
                out.push_str(&format!("group: <{}> with {} relators\n", p.gens.join(","), p.relators.len()));
            }
            let mut tuples = Vec::new();
            for (i, r) in inv.rows.iter().enumerate() {
                let t: Vec<String> = r.words.iter().map(|w| w.display_powers(&p.gens)).collect();
                if lines {
                    out.push_str(&format!("{i}\t({})\n", t.join(", ")));
                } else {
                    out.push_str(&format!("{i}\t[{}]\t({})\tabelian {:?}\n", colors_text(&r.coloring), t.join(", "), r.abelian));
                }
                tuples.push(t);
            }
            if lines {
                return Ok(out);
            }
            out.push_str(&format!("colorings: {}\n", tuples.len()));
            out.push_str(&multiset_text(&tuples));
            out.push_str("battery images (class representatives):\n");
            for g in load_battery(battery.as_deref())? {
                let homs = match find_homs(p, &g, DEFAULT_MAX_GENS) {
                    Ok(h) => h,
                    Err(FpError::TooManyGenerators { gens, max }) => {
                        out.push_str(&format!("  {}: skipped, {gens} generators exceed {max}\n", g.name()));
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                };
                let least = least_in_class(&g);
                let mut images: BTreeMap<String, usize> = BTreeMap::new();
                for h in &homs {
                    let cp = pp.image(h).map_err(invalid)?;
                    let tuples: Vec<Vec<String>> = inv
                        .rows
                        .iter()
                        .map(|r| {
                            let wp = weight_product(&d, &r.coloring, &cp).expect("rows are colorings");
                            wp.products.iter().map(|&e| g.label(least[g.class_of(e)]).to_string()).collect()
                        })
                        .collect();
                    *images.entry(report::format_multiset(&tuples)).or_default() += 1;
                }
                out.push_str(&format!("  {}: {} homomorphisms, {} distinct images\n", g.name(), homs.len(), images.len()));
                for (m, k) in images {
                    out.push_str(&format!("    x{k}\t{m}\n"));
                }
            }
        }
    }
    Ok(out)
}

fn run_unc(pair: &str, budget: usize, verify: bool, battery: Option<PathBuf>) -> Res<String> {
    let vp = load_pair(pair)?;
    let up = universal_presentation_with_budget(&vp, budget);
    let mut out = universal_text(pair, &up);
    if verify {
        let rep = up.check(&load_battery(battery.as_deref())?, DEFAULT_MAX_GENS).map_err(invalid)?;
        if !rep.is_valid() {
            return Err(invalid(format!("{out}universal pair: {} failing instances", rep.violations.len())));
        }
        out.push_str(&format!(
            "universal pair: OK ({} literal, {} relator conjugates, {} battery-verified)\n",
            rep.literal, rep.relator_conjugates, rep.battery_verified
        ));
    }
    if up.exhausted {
        return Err(Failure::Budget(format!("{out}Tietze budget of {budget} steps exhausted")));
    }
    Ok(out)
}

fn run_homs(presentation: &str, group: &str, max_gens: usize, list: bool) -> Res<String> {
    let p = match data_file("presentations", presentation) {
        Some(path) => Presentation::parse(&read(&path)?).map_err(invalid)?,
        None => universal_presentation_with_budget(&load_pair(presentation)?, DEFAULT_TIETZE_BUDGET).simplified,
    };
    let g = load_group(group)?;
    let homs = find_homs(&p, &g, max_gens)?;
    let mut out = format!("{} homomorphisms <{}> -> {}\n", homs.len(), p.gens.join(","), g.name());
    if list {
        for h in &homs {
            let imgs: Vec<String> = p.gens.iter().zip(&h.images).map(|(n, &e)| format!("{n}->{}", g.label(e))).collect();
            out.push_str(&imgs.join(" "));
            out.push('\n');
        }
    }
    Ok(out)
}

fn golden_path(target: &str, long: bool) -> PathBuf {
    let name = if long && target == "census" { "census-long".to_string() } else { target.to_string() };
    data_dir().join("golden").join(format!("{name}.txt"))
}

fn first_difference(want: &str, got: &str) -> String {
    let (w, g): (Vec<&str>, Vec<&str>) = (want.lines().collect(), got.lines().collect());
    for i in 0..w.len().max(g.len()) {
        if w.get(i) != g.get(i) {
            return format!(
                "line {}:\n  golden: {}\n  output: {}",
                i + 1,
                w.get(i).unwrap_or(&"<end>"),
                g.get(i).unwrap_or(&"<end>")
            );
        }
    }
    "trailing whitespace".into()
}

fn run_reproduce(target: &str, bless: bool, long: bool) -> Res<String> {
    let targets: Vec<&str> = if target == "all" { report::TARGETS.to_vec() } else { vec![target] };
    let mut out = String::new();
    let mut failed = Vec::new();
    for t in targets {
        let text = report::generate(t, long)?;
        let path = golden_path(t, long);
        out.push_str(&text);
        if bless {
            fs::write(&path, &text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            out.push_str(&format!("[{t}] golden written: {}\n", path.display()));
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(want) if want == text => out.push_str(&format!("[{t}] matches golden\n")),
            Ok(want) => failed.push(format!("[{t}] differs from golden at {}", first_difference(&want, &text))),
            Err(_) => failed.push(format!("[{t}] no golden file at {} (run with --bless)", path.display())),
        }
    }
    if failed.is_empty() {
        Ok(out)
    } else {
        Err(Failure::Validation(format!("{out}{}", failed.join("\n"))))
    }
}

fn run(cli: Cli) -> Res<String> {
    match cli.command {
        Command::Check { pair, cocycle, battery } => run_check(pair, cocycle, battery),
        Command::Enumerate { n, mode, flip_compatible, long, keys } => run_enumerate(n, mode, flip_compatible, long, keys),
        Command::Color { diagram, pair, list } => run_color(&diagram, &pair, list),
        Command::Invariant { diagram, pair, cocycle, universal: _, battery, state_sum, format } => {
            run_invariant(&diagram, pair, cocycle, battery, state_sum, format)
        }
        Command::Unc { pair, budget, verify, battery } => run_unc(&pair, budget, verify, battery),
        Command::Homs { presentation, group, max_gens, list } => run_homs(&presentation, &group, max_gens, list),
        Command::Census { max_n, long } => {
            if max_n < 2 {
                return Err(Failure::Usage("--max-n must be at least 2".into()));
            }
            Ok(report::census_report(max_n, long)?)
        }
        Command::Reproduce { target, bless, long } => run_reproduce(&target, bless, long),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let msg = f.message();
            // Partial output goes to stdout, the final line is the error.
            match msg.rsplit_once('\n') {
                Some((head, last)) => {
                    println!("{head}");
                    eprintln!("error: {last}");
                }
                None => eprintln!("error: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
