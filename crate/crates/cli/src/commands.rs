//! Subcommand bodies, generic over the coefficient field.

use std::collections::BTreeMap;

use jacring_core::coupling::{
    build_tower, coupling_length, coupling_profile, family_length, tangent_subspace_full,
    theorem65_table, BaseKind, CouplingError, TowerSpec, DEFAULT_MAX_TRIES,
};
use jacring_core::hodge::{
    eigen_hodge, eigen_sum_check, hodge_diamond, primitive_hodge, prop64_check, HodgeError,
};
use jacring_core::ring::hilbert_series;
use jacring_core::{parse_form, Field, GradedQuotientRing, RingError};
use serde_json::{json, Value};

use crate::args::{
    Command, EigenArgs, HodgeCmd, LengthArgs, RingCmd, Selector, Suite, TableArgs, VerifyArgs,
    YukawaCmd,
};
use crate::report::{Check, Report, Table};
use crate::CliError;

/// What a command produced: a report, and a table form when it has one.
pub struct Output {
    pub report: Report,
    pub table: Option<Table>,
    /// Exit with the not-smooth code after printing.
    pub not_smooth: bool,
}

pub struct Ctx<K: Field> {
    pub field: K,
    pub seed: u64,
    pub max_degree: Option<usize>,
    params: BTreeMap<String, Value>,
    probabilistic: bool,
}

impl<K: Field> Ctx<K> {
    pub fn new(field: K, seed: u64, max_degree: Option<usize>) -> Self {
        Ctx {
            field,
            seed,
            max_degree,
            params: BTreeMap::new(),
            probabilistic: false,
        }
    }

    fn param(&mut self, key: &str, value: impl serde::Serialize) {
        self.params
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    fn limit(&self, sigma: usize) -> Result<(), CliError> {
        match self.max_degree {
            Some(max) if sigma > max => Err(CliError::Limit(format!(
                "socle degree {sigma} exceeds --max-degree {max}"
            ))),
            _ => Ok(()),
        }
    }

    /// Exact answers in prime mode are only certain for monomial rings.
    fn note_ring(&mut self, ring: &GradedQuotientRing<K>) {
        if self.field.mode().is_prime() && !ring.is_monomial() {
            self.probabilistic = true;
        }
    }

    fn finish(self, command: &str, results: Value, checks: Vec<Check>) -> Output {
        Output {
            report: Report {
                command: command.to_string(),
                params: self.params,
                field_mode: self.field.mode().to_string(),
                results,
                checks,
                probabilistic: self.probabilistic,
            },
            table: None,
            not_smooth: false,
        }
    }

    fn base_kind(&mut self, random: bool) -> BaseKind<K> {
        if random {
            self.param("base", "random");
            self.param("seed", self.seed);
            BaseKind::Random { seed: self.seed }
        } else {
            self.param("base", "fermat");
            BaseKind::Fermat
        }
    }

    /// Builds the selected ring without checking smoothness.
    fn ring(&mut self, sel: &Selector) -> Result<GradedQuotientRing<K>, CliError> {
        let chosen = [sel.fermat, sel.random, sel.form.is_some(), sel.form_file.is_some()]
            .iter()
            .filter(|&&b| b)
            .count();
        if chosen != 1 {
            return Err(CliError::Usage(
                "choose exactly one of --fermat, --random, --form, --form-file".into(),
            ));
        }
        let text = match (&sel.form, &sel.form_file) {
            (Some(t), _) => {
                self.param("form", t);
                Some(t.clone())
            }
            (_, Some(path)) => {
                self.param("form_file", path.display().to_string());
                let t = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                Some(t)
            }
            _ => None,
        };
        let ring = if let Some(text) = text {
            if sel.d.is_some() || sel.vars.is_some() {
                return Err(CliError::Usage("--d/--vars do not apply to explicit forms".into()));
            }
            let form = parse_form(&text, self.field.clone()).map_err(|e| CliError::Usage(e.to_string()))?;
            self.limit(form.nvars() * form.degree().saturating_sub(2))?;
            GradedQuotientRing::from_form(form)?
        } else {
            let (Some(d), Some(vars)) = (sel.d, sel.vars) else {
                return Err(CliError::Usage("--fermat and --random need --d and --vars".into()));
            };
            self.param("d", d);
            self.param("vars", vars);
            self.limit(vars * d.saturating_sub(2))?;
            if sel.fermat {
                self.param("base", "fermat");
                GradedQuotientRing::fermat(d, vars, self.field.clone())?
            } else {
                self.param("base", "random");
                self.param("seed", self.seed);
                GradedQuotientRing::random_smooth(d, vars, self.field.clone(), self.seed, DEFAULT_MAX_TRIES)?
            }
        };
        self.note_ring(&ring);
        Ok(ring)
    }

    fn smooth_ring(&mut self, sel: &Selector) -> Result<GradedQuotientRing<K>, CliError> {
        let ring = self.ring(sel)?;
        if !ring.smoothness_certificate() {
            return Err(CliError::NotSmooth("the form is not smooth".into()));
        }
        Ok(ring)
    }
}

pub fn execute<K: Field>(cmd: &Command, mut ctx: Ctx<K>) -> Result<Output, CliError> {
    match cmd {
        Command::Ring { cmd: RingCmd::Info(sel) } => ring_info(ctx, sel),
        Command::Hodge { cmd } => match cmd {
            HodgeCmd::Diamond(sel) => {
                let ring = ctx.smooth_ring(sel)?;
                let diamond = hodge_diamond(&ring)?;
                let results = json!({
                    "m": diamond.m,
                    "h": diamond.h,
                    "middle": diamond.middle().h,
                });
                Ok(ctx.finish("hodge diamond", results, Vec::new()))
            }
            HodgeCmd::Primitive(sel) => {
                let ring = ctx.smooth_ring(sel)?;
                let h = primitive_hodge(&ring)?;
                Ok(ctx.finish("hodge primitive", json!(h.h), Vec::new()))
            }
            HodgeCmd::Eigen(args) => hodge_eigen(ctx, args),
        },
        Command::Yukawa { cmd } => match cmd {
            YukawaCmd::Length(args) => yukawa_length(ctx, args),
            YukawaCmd::Profile(sel) => {
                let ring = ctx.smooth_ring(sel)?;
                let profile = coupling_profile(&ring, &tangent_subspace_full(&ring))?;
                let table = Table {
                    header: vec!["mu", "length"],
                    rows: profile
                        .lengths
                        .iter()
                        .enumerate()
                        .map(|(mu, l)| vec![mu.to_string(), l.to_string()])
                        .collect(),
                };
                let results = json!({ "sigma": profile.sigma, "lengths": profile.lengths });
                let mut out = ctx.finish("yukawa profile", results, Vec::new());
                out.table = Some(table);
                Ok(out)
            }
            YukawaCmd::Table(args) => yukawa_table(ctx, args, "yukawa table"),
        },
        Command::Verify(args) => verify(ctx, args),
    }
}

fn ring_info<K: Field>(mut ctx: Ctx<K>, sel: &Selector) -> Result<Output, CliError> {
    let ring = ctx.ring(sel)?;
    let smooth = ring.smoothness_certificate();
    let mut results = json!({
        "form": ring.form().to_string(),
        "d": ring.degree(),
        "nvars": ring.nvars(),
        "socle_degree": ring.socle_degree(),
        "smooth": smooth,
        "monomial": ring.is_monomial(),
    });
    if smooth {
        results["hilbert_function"] = json!(ring.hilbert_function());
    }
    let mut out = ctx.finish("ring info", results, Vec::new());
    out.not_smooth = !smooth;
    Ok(out)
}

fn hodge_eigen<K: Field>(mut ctx: Ctx<K>, args: &EigenArgs) -> Result<Output, CliError> {
    let sel = Selector {
        fermat: !args.random,
        random: args.random,
        d: Some(args.d),
        vars: Some(args.base_vars),
        ..Selector::default()
    };
    let base = ctx.smooth_ring(&sel)?;
    ctx.params.remove("vars");
    ctx.param("base_vars", args.base_vars);
    let results = match args.i {
        Some(i) => {
            ctx.param("i", i);
            json!(eigen_hodge(&base, i)?.h)
        }
        None => {
            ctx.param("all", true);
            let mut all = BTreeMap::new();
            for i in 1..args.d {
                all.insert(i.to_string(), eigen_hodge(&base, i)?.h);
            }
            json!(all)
        }
    };
    Ok(ctx.finish("hodge eigen", results, Vec::new()))
}

fn yukawa_length<K: Field>(mut ctx: Ctx<K>, args: &LengthArgs) -> Result<Output, CliError> {
    let (ring, v, n) = if args.tower {
        let sel = &args.sel;
        if sel.fermat || sel.form.is_some() || sel.form_file.is_some() || sel.vars.is_some() {
            return Err(CliError::Usage("--tower takes --d, --n, --levels and optionally --random".into()));
        }
        let (Some(d), Some(n), Some(levels)) = (sel.d, args.n, args.levels) else {
            return Err(CliError::Usage("--tower needs --d, --n and --levels".into()));
        };
        if levels == 0 || levels > n {
            return Err(CliError::Usage(format!("--levels must lie in [1, {n}]")));
        }
        ctx.param("tower", true);
        ctx.param("d", d);
        ctx.param("n", n);
        ctx.param("levels", levels);
        ctx.limit((n + 1) * d.saturating_sub(2))?;
        let spec = TowerSpec {
            d,
            base_nvars: n - levels + 1,
            levels,
            base: ctx.base_kind(sel.random),
        };
        let tower = build_tower(&spec, ctx.field.clone())?;
        ctx.note_ring(&tower.base);
        (tower.ring, tower.v, n)
    } else {
        if args.n.is_some() || args.levels.is_some() {
            return Err(CliError::Usage("--n and --levels need --tower".into()));
        }
        let ring = ctx.smooth_ring(&args.sel)?;
        let v = tangent_subspace_full(&ring);
        let n = ring.ambient_dim();
        (ring, v, n)
    };
    let d = ring.degree() as i64;
    let default_mu = d - n as i64 - 1;
    let mu = args.mu.unwrap_or(default_mu);
    ctx.param("mu", mu);
    let length = if args.tower || args.mu.is_some() {
        coupling_length(&ring, &v, mu)?
    } else {
        family_length(&ring)?.length
    };
    let results = json!({
        "length": length,
        "mu": mu,
        "hypothesis_holds": d > n as i64,
    });
    Ok(ctx.finish("yukawa length", results, Vec::new()))
}

fn yukawa_table<K: Field>(mut ctx: Ctx<K>, args: &TableArgs, command: &str) -> Result<Output, CliError> {
    ctx.param("d", args.d);
    ctx.param("n", args.n);
    ctx.limit((args.n + 1) * args.d.saturating_sub(2))?;
    let base = ctx.base_kind(args.random);
    if args.random && ctx.field.mode().is_prime() {
        ctx.probabilistic = true;
    }
    let table = theorem65_table(args.d, args.n, base, ctx.field.clone())?;
    let checks = table
        .rows
        .iter()
        .map(|r| Check::new(format!("length at ell={}", r.ell), r.closed_form, r.computed))
        .collect();
    let csv = Table {
        header: vec!["ell", "computed", "closed_form", "match"],
        rows: table
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.ell.to_string(),
                    r.computed.to_string(),
                    r.closed_form.to_string(),
                    r.matches.to_string(),
                ]
            })
            .collect(),
    };
    let results: BTreeMap<String, usize> =
        table.as_map().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    let mut out = ctx.finish(command, json!(results), checks);
    out.table = Some(csv);
    Ok(out)
}

fn verify<K: Field>(mut ctx: Ctx<K>, args: &VerifyArgs) -> Result<Output, CliError> {
    let needs_ring = !matches!(args.suite, Suite::Prop64 | Suite::Theorem65);
    if needs_ring && args.n.is_some() {
        return Err(CliError::Usage("--n applies only to prop64 and theorem65".into()));
    }
    let (command, checks) = match args.suite {
        Suite::Macaulay => {
            let ring = ctx.smooth_ring(&args.sel)?;
            let sigma = ring.socle_degree();
            let mut checks = vec![Check::new("socle dimension", 1, ring.dim(sigma as i64))];
            for mu in 0..=sigma {
                checks.push(Check::new(
                    format!("pairing rank at mu={mu}"),
                    ring.dim(mu as i64),
                    ring.macaulay_pairing_rank(mu as i64)?,
                ));
            }
            ("verify macaulay", checks)
        }
        Suite::Hilbert => {
            let ring = ctx.smooth_ring(&args.sel)?;
            let series = hilbert_series(ring.degree(), ring.nvars());
            let checks = (0..=ring.socle_degree() + 1)
                .map(|mu| {
                    Check::new(
                        format!("dim at mu={mu}"),
                        series.get(mu).copied().unwrap_or(0),
                        ring.dim(mu as i64),
                    )
                })
                .collect();
            ("verify hilbert", checks)
        }
        Suite::Koszul => {
            let ring = ctx.smooth_ring(&args.sel)?;
            let (d, sigma, nvars) = (ring.degree(), ring.socle_degree(), ring.nvars());
            let mut checks = Vec::new();
            for mu in [d as i64 - 1, sigma as i64, (sigma + d - 1) as i64] {
                let k = ring.koszul_cohomology_dims(mu, nvars);
                for r in (1..=nvars).rev() {
                    checks.push(Check::new(format!("mu={mu} spot {r}"), 0, k.at_spot(r)));
                }
                checks.push(Check::new(format!("mu={mu} spot 0"), ring.dim(mu), k.at_spot(0)));
            }
            ("verify koszul", checks)
        }
        Suite::Tower => {
            let ring = ctx.smooth_ring(&args.sel)?;
            let d = ring.degree();
            ctx.limit((ring.nvars() + 1) * d.saturating_sub(2))?;
            let ext = ring.root_extension()?;
            let mut checks: Vec<Check> = (0..=ext.socle_degree() as i64 + 1)
                .map(|mu| {
                    let rule: usize = (0..=d as i64 - 2).map(|e| ring.dim(mu - e)).sum();
                    Check::new(format!("cover dim at mu={mu}"), rule, ext.dim(mu))
                })
                .collect();
            checks.push(Check::new("eigenspaces sum to the cover", true, eigen_sum_check(&ring)?));
            ("verify tower", checks)
        }
        Suite::Lemma18 => {
            let ring = ctx.smooth_ring(&args.sel)?;
            lemma18_checks(&ring)?
        }
        Suite::Prop64 => {
            let (d, n) = dn(args)?;
            ctx.param("d", d);
            ctx.param("n", n);
            ctx.limit((n + 3) * d.saturating_sub(2))?;
            let r = prop64_check(d, n, ctx.field.clone())?;
            let mut checks = vec![Check::new("off-center agreement", true, r.off_center_equal)];
            if n % 2 == 0 {
                checks.push(Check::new("center residual W", 0, r.residual_w));
                checks.push(Check::new("center residual W'", 0, r.residual_wprime));
            }
            let results = json!({
                "lhs": r.lhs,
                "rhs": r.rhs,
                "residual_w": r.residual_w,
                "residual_wprime": r.residual_wprime,
            });
            return Ok(summarize(ctx.finish("verify prop64", results, checks)));
        }
        Suite::Theorem65 => {
            let (d, n) = dn(args)?;
            let table = TableArgs {
                d,
                n,
                random: args.sel.random,
            };
            let out = yukawa_table(ctx, &table, "verify theorem65")?;
            return Ok(out);
        }
    };
    Ok(summarize(ctx.finish(command, Value::Null, checks)))
}

fn dn(args: &VerifyArgs) -> Result<(usize, usize), CliError> {
    let sel = &args.sel;
    if sel.fermat || sel.form.is_some() || sel.form_file.is_some() || sel.vars.is_some() {
        return Err(CliError::Usage("this suite takes --d and --n".into()));
    }
    match (sel.d, args.n) {
        (Some(d), Some(n)) => Ok((d, n)),
        _ => Err(CliError::Usage("this suite needs --d and --n".into())),
    }
}

fn summarize(mut out: Output) -> Output {
    let passed = out.report.checks.iter().filter(|c| c.pass).count();
    let summary = json!({ "checks": out.report.checks.len(), "passed": passed });
    out.report.results = match out.report.results.take() {
        Value::Null => summary,
        mut v => {
            v["summary"] = summary;
            v
        }
    };
    out
}

/// The product-map statements for full `R_d`: nonvanishing of `S^{n-1}`,
/// vanishing of `S^n`, and the shape of the profile.
fn lemma18_checks<K: Field>(
    ring: &GradedQuotientRing<K>,
) -> Result<(&'static str, Vec<Check>), CliError> {
    let d = ring.degree();
    let n = ring.ambient_dim();
    if n < 1 || d < n + 1 {
        return Err(CliError::Usage(format!("needs d >= n+1 with n >= 1, got d={d}, n={n}")));
    }
    let sigma = ring.socle_degree();
    let p = coupling_profile(ring, &tangent_subspace_full(ring))?.lengths;
    let mut checks = Vec::new();
    for (mu, &len) in p.iter().enumerate() {
        checks.push(Check::new(
            format!("S^(n-1) product nonzero at mu={mu}"),
            mu <= 2 * (d - n - 1),
            len + 1 >= n,
        ));
    }
    checks.push(Check::new(
        "S^n product nonzero for some mu",
        d >= 2 * (n + 1),
        p.iter().any(|&l| l >= n),
    ));
    checks.push(Check::new("weakly decreasing", true, p.windows(2).all(|w| w[0] >= w[1])));
    checks.push(Check::new(
        "step bound",
        true,
        (0..=sigma.saturating_sub(d)).all(|mu| p[mu] <= p[mu + d] + 1),
    ));
    checks.push(Check::new("zero at the socle", 0, p[sigma]));
    Ok(("verify lemma18", checks))
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::NotSmooth | RingError::SmoothnessNotFound { .. } => CliError::NotSmooth(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<HodgeError> for CliError {
    fn from(e: HodgeError) -> Self {
        match e {
            HodgeError::NotSmooth => CliError::NotSmooth(e.to_string()),
            HodgeError::Ring(r) => r.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<CouplingError> for CliError {
    fn from(e: CouplingError) -> Self {
        match e {
            CouplingError::Ring(r) => r.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}
