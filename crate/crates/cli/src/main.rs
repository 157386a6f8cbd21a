mod args;

use std::fs;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Map, Value};

use args::{Cli, Command, CutAction, FamiliesAction, Format, GroupAction, GroupArgs, RingAction, RsAction};
use cutgroup::classes::ClassData;
use cutgroup::families::{
    baumslag_solitar_is_cut, extension_is_cut, metacyclic_is_cut, preset, ExtensionShape, FamilyVerdict,
    MetacyclicParams,
};
use cutgroup::lattice::delta_product_membership;
use cutgroup::rs::{is_cut, is_rs_element, is_rs_subgroup, rank_central_units, rank_preserved, rs_class_status};
use cutgroup::subgroup::{is_nilpotent, is_solvable, normal_closure, normal_subgroups};
use cutgroup::verify::{run_all, run_suite, SuiteOptions, SuiteReport};
use cutgroup::{Error, FiniteGroup, GroupRing, GroupRingElement, GroupSpec, Subgroup, Verdict};

/// What a command produced. `outcome` drives the exit status: `Some(false)` and an
/// undetermined family verdict both exit 1.
struct Output {
    command: &'static str,
    outcome: Outcome,
    body: Map<String, Value>,
    text: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    /// A computation with no yes/no answer.
    Value,
    Decided(bool),
    Undetermined,
}

impl Output {
    fn new(command: &'static str, outcome: Outcome) -> Self {
        Output {
            command,
            outcome,
            body: Map::new(),
            text: Vec::new(),
        }
    }

    fn field(mut self, key: &str, value: impl serde::Serialize) -> Self {
        self.body
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }

    fn line(mut self, line: impl Into<String>) -> Self {
        self.text.push(line.into());
        self
    }

    fn exit_code(&self) -> u8 {
        match self.outcome {
            Outcome::Value | Outcome::Decided(true) => 0,
            Outcome::Decided(false) | Outcome::Undetermined => 1,
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("command".into(), json!(self.command));
                match self.outcome {
                    Outcome::Value => {}
                    Outcome::Decided(b) => {
                        doc.insert("outcome".into(), json!(b));
                    }
                    Outcome::Undetermined => {
                        doc.insert("outcome".into(), Value::Null);
                    }
                }
                doc.extend(self.body.clone());
                serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable")
            }
            Format::Text => {
                let mut lines = self.text.clone();
                match self.outcome {
                    Outcome::Value => {}
                    Outcome::Decided(b) => lines.push(format!("outcome: {b}")),
                    Outcome::Undetermined => lines.push("outcome: undetermined".into()),
                }
                lines.join("\n")
            }
        }
    }
}

/// A loaded group with the spec it came from.
struct Loaded {
    spec: GroupSpec,
    label: String,
    group: FiniteGroup,
}

fn load_group(args: &GroupArgs) -> Result<Loaded, Error> {
    let spec = if let Some(words) = &args.catalog {
        let (name, rest) = words.split_first().expect("clap requires at least one value");
        let params = rest
            .iter()
            .map(|p| {
                p.parse::<i64>()
                    .map_err(|_| Error::InvalidParams(format!("parameter `{p}` is not an integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GroupSpec::catalog(name, &params)
    } else {
        let path = args.spec.as_ref().expect("clap requires --catalog or --spec");
        let text = fs::read_to_string(path).map_err(|e| Error::Spec(format!("{}: {e}", path.display())))?;
        GroupSpec::from_json(&text)?
    };
    let group = spec.build()?;
    Ok(Loaded {
        label: spec.label(),
        spec,
        group,
    })
}

/// Group ring elements are given inline as JSON or as a path to a JSON file.
fn parse_element(arg: &str) -> Result<GroupRingElement, Error> {
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Error::Spec(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Spec(format!("group ring element: {e}")))
}

fn element_text(u: &GroupRingElement) -> String {
    serde_json::to_string(u).expect("serializable")
}

fn spec_value(spec: &GroupSpec) -> Value {
    serde_json::from_str(&spec.to_json()).expect("spec JSON parses")
}

fn with_group(out: Output, g: &Loaded) -> Output {
    out.field("group", &g.label).field("spec", spec_value(&g.spec))
}

fn verdict_output(command: &'static str, g: &Loaded, v: Verdict, what: &str) -> Output {
    let mut lines = vec![format!(
        "{}: {what} {}",
        g.label,
        if v.outcome { "holds" } else { "fails" }
    )];
    if let Some(w) = &v.witness {
        lines.push(format!("witness: {}", serde_json::to_string(w).expect("serializable")));
    }
    let mut out = with_group(Output::new(command, Outcome::Decided(v.outcome)), g).field("witness", &v.witness);
    out.text = lines;
    out
}

fn normal_from(g: &Loaded, gens: &[usize]) -> Result<Subgroup, Error> {
    if let Some(&bad) = gens.iter().find(|&&x| !g.group.contains_index(x)) {
        return Err(Error::InvalidParams(format!("element {bad} is not in the group")));
    }
    normal_closure(&g.group, gens)
}

fn group_show(g: &Loaded, elements: bool) -> Output {
    let grp = &g.group;
    let gens: Vec<Value> = grp
        .generators()
        .iter()
        .map(|&i| json!({"index": i, "permutation": grp.element(i).to_string()}))
        .collect();
    let census: Vec<Value> = grp
        .order_census()
        .iter()
        .map(|&(o, c)| json!({"order": o, "count": c}))
        .collect();
    let mut out = with_group(Output::new("group show", Outcome::Value), g)
        .field("order", grp.order())
        .field("degree", grp.degree())
        .field("exponent", grp.exponent())
        .field("abelian", grp.is_abelian())
        .field("nilpotent", is_nilpotent(grp))
        .field("solvable", is_solvable(grp))
        .field("generators", gens)
        .field("order_census", census)
        .line(format!("group: {}", g.label))
        .line(format!(
            "order: {}  degree: {}  exponent: {}",
            grp.order(),
            grp.degree(),
            grp.exponent()
        ))
        .line(format!(
            "abelian: {}  nilpotent: {}  solvable: {}",
            grp.is_abelian(),
            is_nilpotent(grp),
            is_solvable(grp)
        ));
    for &i in grp.generators() {
        out = out.line(format!("generator {i}: {}", grp.element(i)));
    }
    let census_text: Vec<String> = grp.order_census().iter().map(|(o, c)| format!("{c}x{o}")).collect();
    out = out.line(format!("element orders: {}", census_text.join(" ")));
    if elements {
        let list: Vec<Value> = (0..grp.order())
            .map(|i| json!({"index": i, "order": grp.element_order(i), "permutation": grp.element(i).to_string()}))
            .collect();
        for i in 0..grp.order() {
            out = out.line(format!("{i}: {} (order {})", grp.element(i), grp.element_order(i)));
        }
        out = out.field("elements", list);
    }
    out
}

fn group_classes(g: &Loaded) -> Output {
    let grp = &g.group;
    let data = ClassData::of(grp);
    let status = rs_class_status(grp);
    let mut out = with_group(Output::new("group classes", Outcome::Value), g)
        .field("rational_classes", data.q_classes.len())
        .field("real_classes", data.r_classes.len())
        .line(format!(
            "{}: {} classes, {} real, {} rational",
            g.label,
            data.num_classes(),
            data.r_classes.len(),
            data.q_classes.len()
        ));
    let mut list = Vec::new();
    for (c, members) in data.classes.iter().enumerate() {
        list.push(json!({
            "representative": members[0],
            "size": members.len(),
            "order": data.class_orders[c],
            "rs": status[c].is_none(),
            "failing_exponent": status[c],
        }));
        let rs = match status[c] {
            None => "RS".to_string(),
            Some(j) => format!("not RS (exponent {j})"),
        };
        out = out.line(format!(
            "class {c}: representative {} size {} order {} {rs}",
            members[0],
            members.len(),
            data.class_orders[c]
        ));
    }
    out.field("classes", list)
}

fn group_normals(g: &Loaded) -> Output {
    let normals = normal_subgroups(&g.group);
    let list: Vec<Value> = normals
        .iter()
        .map(|n| json!({"order": n.order(), "generators": n.generators(), "members": n.members()}))
        .collect();
    let mut out = with_group(Output::new("group normals", Outcome::Value), g)
        .field("normal_subgroups", list)
        .line(format!("{}: {} normal subgroups", g.label, normals.len()));
    for (i, n) in normals.iter().enumerate() {
        out = out.line(format!("{i}: order {} generated by {:?}", n.order(), n.generators()));
    }
    out
}

fn family_output(command: &'static str, v: &FamilyVerdict) -> Output {
    let outcome = match v.outcome {
        Some(b) => Outcome::Decided(b),
        None => Outcome::Undetermined,
    };
    let mut out = Output::new(command, outcome)
        .field("derivation", &v.derivation)
        .field("notes", &v.notes)
        .field(
            "statements",
            v.derivation.iter().map(|c| c.statement()).collect::<Vec<_>>(),
        );
    for c in &v.derivation {
        out = out.line(format!(
            "by {}: {}",
            serde_json::to_value(c).expect("clause").as_str().unwrap_or(""),
            c.statement()
        ));
    }
    for n in &v.notes {
        out = out.line(format!("note: {n}"));
    }
    out
}

fn families(action: &FamiliesAction) -> Result<Output, Error> {
    match action {
        FamiliesAction::Metacyclic { m, n, r } => {
            let p = MetacyclicParams::new(*m, *n, *r)?;
            Ok(family_output("families metacyclic", &metacyclic_is_cut(&p)?)
                .field("m", p.m())
                .field("n", p.n())
                .field("r", p.r()))
        }
        FamiliesAction::Bs { m, n } => Ok(family_output("families bs", &baumslag_solitar_is_cut(*m, *n)?)
            .field("m", m)
            .field("n", n)),
        FamiliesAction::Amalgam {
            preset: name,
            rs_in_factor,
            indices,
        } => {
            let shape = match name {
                Some(name) => preset(name)?,
                None => {
                    let indices = match indices.as_deref() {
                        None => None,
                        Some(&[a, b]) => Some((a, b)),
                        Some(_) => return Err(Error::InvalidParams("--indices takes exactly two values".into())),
                    };
                    ExtensionShape::Amalgam {
                        amalgamated_rs_in_factor: *rs_in_factor,
                        indices,
                    }
                }
            };
            Ok(family_output("families amalgam", &extension_is_cut(&shape)?).field("shape", &shape))
        }
    }
}

fn ring(action: &RingAction) -> Result<Output, Error> {
    let value = |command, g: &Loaded, u: &GroupRingElement| {
        with_group(Output::new(command, Outcome::Value), g)
            .field("result", u)
            .line(element_text(u))
    };
    match action {
        RingAction::Mul { group, u, v } => {
            let g = load_group(group)?;
            let r = GroupRing::new(&g.group).mul(&parse_element(u)?, &parse_element(v)?)?;
            Ok(value("ring mul", &g, &r))
        }
        RingAction::Star { group, u } => {
            let g = load_group(group)?;
            let r = GroupRing::new(&g.group).star(&parse_element(u)?)?;
            Ok(value("ring star", &g, &r))
        }
        RingAction::Theta { group, u } => {
            let g = load_group(group)?;
            let ring = GroupRing::new(&g.group);
            let t = ring.theta(&parse_element(u)?)?;
            let symmetric = ring.is_symmetric(&t)?;
            Ok(value("ring theta", &g, &t).field("symmetric", symmetric))
        }
        RingAction::Bass { group, element, k } => {
            let g = load_group(group)?;
            if !g.group.contains_index(*element) {
                return Err(Error::InvalidParams(format!("element {element} is not in the group")));
            }
            let b = GroupRing::new(&g.group).bass_unit(*element, *k)?;
            Ok(value("ring bass", &g, &b))
        }
        RingAction::DeltaMember { group, normal, u } => {
            let g = load_group(group)?;
            let n = normal_from(&g, normal)?;
            let inside = delta_product_membership(&g.group, &n, &parse_element(u)?)?;
            Ok(
                with_group(Output::new("ring delta-member", Outcome::Decided(inside)), &g)
                    .field("normal", n.members())
                    .line(format!(
                        "{}: element {} the product of augmentation ideals for N of order {}",
                        g.label,
                        if inside { "lies in" } else { "is not in" },
                        n.order()
                    )),
            )
        }
    }
}

fn verify(suite: &str, cli: &Cli) -> Result<Output, Error> {
    let options = SuiteOptions {
        max_order: cli.max_order,
        seed: cli.seed,
    };
    let reports: Vec<SuiteReport> = if suite == "all" {
        run_all(&options)?
    } else {
        vec![run_suite(suite, &options)?]
    };
    let passed = reports.iter().all(SuiteReport::passed);
    let mut out = Output::new("verify", Outcome::Decided(passed))
        .field("suite", suite)
        .field("seed", cli.seed)
        .field("reports", &reports);
    for r in &reports {
        out = out.line(r.summary());
        for f in &r.failures {
            out = out.line(format!(
                "  failure in {}: {}",
                f.group,
                serde_json::to_string(&f.finding).expect("finding")
            ));
        }
        for f in &r.review {
            out = out.line(format!(
                "  review {}: {}",
                f.group,
                serde_json::to_string(&f.finding).expect("finding")
            ));
        }
    }
    Ok(out)
}

fn execute(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Group { action } => match action {
            GroupAction::Show { group, elements } => Ok(group_show(&load_group(group)?, *elements)),
            GroupAction::Classes(group) => Ok(group_classes(&load_group(group)?)),
            GroupAction::Normals(group) => Ok(group_normals(&load_group(group)?)),
        },
        Command::Cut {
            action: CutAction::Check(group),
        } => {
            let g = load_group(group)?;
            let v = is_cut(&g.group);
            Ok(verdict_output("cut check", &g, v, "cut"))
        }
        Command::Rs { action } => match action {
            RsAction::Element { group, element } => {
                let g = load_group(group)?;
                let v = is_rs_element(&g.group, *element)?;
                Ok(verdict_output("rs element", &g, v, &format!("element {element} RS")).field("element", element))
            }
            RsAction::Subgroup { group, generators } => {
                let g = load_group(group)?;
                if let Some(&bad) = generators.iter().find(|&&x| !g.group.contains_index(x)) {
                    return Err(Error::InvalidParams(format!("element {bad} is not in the group")));
                }
                let a = Subgroup::generated_by(&g.group, generators)?;
                let v = is_rs_subgroup(&g.group, &a)?;
                Ok(
                    verdict_output("rs subgroup", &g, v, &format!("subgroup of order {} RS", a.order()))
                        .field("subgroup", a.members()),
                )
            }
        },
        Command::Rank(group) => {
            let g = load_group(group)?;
            let rank = rank_central_units(&g.group);
            Ok(with_group(Output::new("rank", Outcome::Value), &g)
                .field("rank", rank)
                .line(rank.to_string()))
        }
        Command::RankPreserved { group, normal } => {
            let g = load_group(group)?;
            let n = normal_from(&g, normal)?;
            let v = rank_preserved(&g.group, &n)?;
            Ok(verdict_output(
                "rank-preserved",
                &g,
                v,
                &format!("rank over N of order {} preserved", n.order()),
            )
            .field("normal", n.members()))
        }
        Command::Ring { action } => ring(action),
        Command::Families { action } => families(action),
        Command::Verify { suite } => verify(suite, cli),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Group { action } => match action {
            GroupAction::Show { .. } => "group show",
            GroupAction::Classes(_) => "group classes",
            GroupAction::Normals(_) => "group normals",
        },
        Command::Cut { .. } => "cut check",
        Command::Rs { action } => match action {
            RsAction::Element { .. } => "rs element",
            RsAction::Subgroup { .. } => "rs subgroup",
        },
        Command::Rank(_) => "rank",
        Command::RankPreserved { .. } => "rank-preserved",
        Command::Ring { action } => match action {
            RingAction::Mul { .. } => "ring mul",
            RingAction::Star { .. } => "ring star",
            RingAction::Theta { .. } => "ring theta",
            RingAction::Bass { .. } => "ring bass",
            RingAction::DeltaMember { .. } => "ring delta-member",
        },
        Command::Families { action } => match action {
            FamiliesAction::Metacyclic { .. } => "families metacyclic",
            FamiliesAction::Bs { .. } => "families bs",
            FamiliesAction::Amalgam { .. } => "families amalgam",
        },
        Command::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            println!("{}", out.render(cli.format));
            ExitCode::from(out.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            if cli.format == Format::Json {
                let doc = json!({"command": command_name(&cli.command), "error": e.to_string()});
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            }
            ExitCode::from(2)
        }
    }
}
