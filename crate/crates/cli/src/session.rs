//! Input files: TOML with one section per object kind.

use std::collections::BTreeMap;

use hopfpi_core::colorlie::{Bicharacter, ColorLieSuperalgebra, GradedGroupAction};
use hopfpi_core::freealg::{MultilinearTemplate, Shape};
use hopfpi_core::groups::{Character, FgAbelianGroup, FiniteGroup, GammaElem};
use hopfpi_core::linalg::Matrix;
use hopfpi_core::pilab::Bilinear;
use hopfpi_core::presented::{build_preset, CartanDatum, PresetSpec, Presentation};
use hopfpi_core::rep::MatrixRep;
use hopfpi_core::{Error, FieldCtx, Result, Scalar};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionSpec {
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<DatumSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characters: Option<CharactersSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colorlie: Option<ColorLieSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<RepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<TensorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<IdentitySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    Rational,
    Cyclotomic { n: u32 },
    RationalFunction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    /// `Fq`, `UqSl2`, `A2Borel` or `QuantumLinearSpace`.
    pub preset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    /// Braiding matrix for `QuantumLinearSpace`; only the upper triangle is read.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qmatrix: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaSpec {
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

impl GammaSpec {
    fn build(&self) -> Result<FgAbelianGroup> {
        FgAbelianGroup::new(self.free_rank, self.torsion.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSpec {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

/// Either a named example (`example1`, `example2`) or an explicit datum.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gamma_names: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub g: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chi: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cartan: Vec<Vec<i64>>,
    /// A single linking scalar for `example2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambda: Vec<LinkSpec>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    /// `cyclic`, `symmetric`, `dihedral` or `quaternion`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<usize>>>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        if let Some(t) = &self.table {
            return FiniteGroup::from_table(t.clone());
        }
        if let Some(p) = &self.permutations {
            return FiniteGroup::from_permutations(p);
        }
        let kind = self.kind.as_deref().ok_or_else(|| Error::invalid_input("group needs kind, table or permutations"))?;
        let n = || self.n.ok_or_else(|| Error::invalid_input(format!("group kind {kind} needs n")));
        match kind {
            "cyclic" => FiniteGroup::cyclic(n()?),
            "symmetric" => FiniteGroup::symmetric(n()?),
            "dihedral" => FiniteGroup::dihedral(n()?),
            "quaternion" => FiniteGroup::quaternion(),
            other => Err(Error::invalid_input(format!("unknown group kind {other}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharactersSpec {
    pub gamma: GammaSpec,
    /// One list of generator images per character.
    pub images: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub x: String,
    pub y: String,
    pub z: String,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorLieSpec {
    #[serde(default)]
    pub torsion: Vec<u64>,
    /// `β` on pairs of generators of `T`.
    #[serde(default)]
    pub beta: Vec<Vec<String>>,
    pub names: Vec<String>,
    /// Degree of each basis vector in coordinates of `T`.
    #[serde(default)]
    pub degrees: Vec<Vec<i64>>,
    /// Sparse structure constants: `[x,y]` has coefficient `c` on `z`. The
    /// opposite bracket is filled in from the color antisymmetry.
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionGenSpec {
    pub element: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub group: GroupSpec,
    #[serde(default)]
    pub generators: Vec<ActionGenSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSpec {
    /// Spanning vectors of `M` in basis coordinates.
    #[serde(default)]
    pub m: Vec<Vec<String>>,
    /// Alternatively, basis names spanning `M`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub m_basis: Vec<String>,
    /// Elements of the subgroup `A` as indices into the group table.
    pub a: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpec {
    pub dim: usize,
    pub generators: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorSpec {
    /// `t[i][j][k]`: coefficient of `e_k` in `f(u_i, v_j)`.
    pub t: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentitySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    /// Coefficients indexed by permutations in lexicographic order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coeffs: Vec<String>,
    /// `plain`, `qcomm` or `ad`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
}

/// Command-line options that may also be stored in the file.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

/// A located input error.
#[derive(Debug)]
pub struct InputError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Parses the file and every scalar literal in it, reporting positions in the file.
pub fn parse_input(text: &str) -> std::result::Result<SessionSpec, InputError> {
    let spec: SessionSpec = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_col(text, s.start));
        InputError { line, column, message: e.message().to_string() }
    })?;
    let ctx = spec.field.build().map_err(|e| InputError { line: 1, column: 1, message: e.to_string() })?;
    for lit in spec.scalar_literals() {
        if let Err(e) = ctx.parse(lit) {
            let col = match &e {
                Error::Syntax { column, .. } => *column,
                _ => 1,
            };
            let (line, column) = locate(text, lit, col);
            return Err(InputError { line, column, message: e.to_string() });
        }
    }
    Ok(spec)
}

fn locate(text: &str, lit: &str, col: usize) -> (usize, usize) {
    for quote in ['"', '\''] {
        let needle = format!("{quote}{lit}{quote}");
        if let Some(pos) = text.find(&needle) {
            let inner = pos + 1 + lit.char_indices().nth(col.saturating_sub(1)).map_or(lit.len(), |(i, _)| i);
            return line_col(text, inner);
        }
    }
    (1, 1)
}

impl FieldSpec {
    pub fn build(&self) -> Result<FieldCtx> {
        match self {
            FieldSpec::Rational => Ok(FieldCtx::rational()),
            FieldSpec::Cyclotomic { n } => FieldCtx::cyclotomic(*n),
            FieldSpec::RationalFunction => Ok(FieldCtx::rational_function()),
        }
    }
}

fn scalar(ctx: &FieldCtx, s: &str) -> Result<Scalar> {
    ctx.parse(s)
}

fn scalars(ctx: &FieldCtx, v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| scalar(ctx, s)).collect()
}

fn matrix(ctx: &FieldCtx, rows: &[Vec<String>]) -> Result<Matrix<Scalar>> {
    let rows = rows.iter().map(|r| scalars(ctx, r)).collect::<Result<Vec<_>>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::invalid_input("matrix rows must be nonempty and of equal length"));
    }
    Ok(Matrix::from_rows(rows))
}

impl SessionSpec {
    /// Every scalar literal appearing in the file.
    pub fn scalar_literals(&self) -> Vec<&str> {
        fn rows<'a>(out: &mut Vec<&'a str>, m: &'a [Vec<String>]) {
            for r in m {
                out.extend(r.iter().map(String::as_str));
            }
        }
        let mut out: Vec<&str> = Vec::new();
        if let Some(a) = &self.algebra {
            out.extend(a.q.as_deref());
            out.extend(a.lambda.as_deref());
            if let Some(m) = &a.qmatrix {
                rows(&mut out, m);
            }
        }
        if let Some(d) = &self.datum {
            out.extend(d.q.as_deref());
            out.extend(d.link.as_deref());
            rows(&mut out, &d.chi);
            out.extend(d.lambda.iter().map(|l| l.value.as_str()));
        }
        if let Some(c) = &self.characters {
            rows(&mut out, &c.images);
        }
        if let Some(c) = &self.colorlie {
            rows(&mut out, &c.beta);
            out.extend(c.brackets.iter().map(|b| b.c.as_str()));
        }
        if let Some(a) = &self.action {
            for g in &a.generators {
                rows(&mut out, &g.matrix);
            }
        }
        if let Some(w) = &self.witness {
            rows(&mut out, &w.m);
        }
        if let Some(r) = &self.rep {
            for m in r.generators.values() {
                rows(&mut out, m);
            }
        }
        if let Some(t) = &self.tensor {
            for slice in &t.t {
                rows(&mut out, slice);
            }
        }
        if let Some(i) = &self.identity {
            out.extend(i.q.as_deref());
            out.extend(i.coeffs.iter().map(String::as_str));
        }
        out
    }

    pub fn ctx(&self) -> Result<FieldCtx> {
        self.field.build()
    }

    pub fn presentation(&self, ctx: FieldCtx) -> Result<Presentation> {
        if let Some(a) = &self.algebra {
            let q = || {
                a.q.as_deref()
                    .ok_or_else(|| Error::invalid_input(format!("preset {} needs q", a.preset)))
                    .and_then(|s| scalar(&ctx, s))
            };
            let spec = match a.preset.as_str() {
                "Fq" => PresetSpec::Fq { q: q()? },
                "A2Borel" => PresetSpec::A2Borel { q: q()? },
                "UqSl2" => PresetSpec::UqSl2 {
                    q: q()?,
                    lambda: a.lambda.as_deref().map(|s| scalar(&ctx, s)).transpose()?,
                    ell: a.ell,
                },
                "QuantumLinearSpace" => {
                    let m = a.qmatrix.as_ref().ok_or_else(|| Error::invalid_input("QuantumLinearSpace needs qmatrix"))?;
                    PresetSpec::QuantumLinearSpace {
                        q: m.iter().map(|r| scalars(&ctx, r)).collect::<Result<_>>()?,
                    }
                }
                other => return Err(Error::invalid_input(format!("unknown preset {other}"))),
            };
            return build_preset(ctx, &spec);
        }
        if self.datum.is_some() {
            let (p, rep) = self.cartan_datum(ctx)?.build(8)?;
            if !rep.confluent() {
                return Err(Error::Inconclusive(format!("completion not confluent: {}", rep.failures.join("; "))));
            }
            return Ok(p);
        }
        if self.colorlie.is_some() {
            let (p, _) = hopfpi_core::colorlie::enveloping_presentation(&self.color_lie(ctx)?)?;
            return Ok(p);
        }
        Err(Error::invalid_input("no [algebra], [datum] or [colorlie] section"))
    }

    pub fn cartan_datum(&self, ctx: FieldCtx) -> Result<CartanDatum> {
        let d = self.datum.as_ref().ok_or_else(|| Error::invalid_input("missing [datum] section"))?;
        let q = || {
            d.q.as_deref()
                .ok_or_else(|| Error::invalid_input("datum example needs q"))
                .and_then(|s| scalar(&ctx, s))
        };
        match d.example.as_deref() {
            Some("example1") => return CartanDatum::example1(ctx, q()?),
            Some("example2") => {
                let link = d.link.as_deref().map(|s| scalar(&ctx, s)).transpose()?;
                return CartanDatum::example2(ctx, q()?, link, d.ell);
            }
            Some(other) => return Err(Error::invalid_input(format!("unknown datum example {other}"))),
            None => {}
        }
        let gamma = d.gamma.as_ref().ok_or_else(|| Error::invalid_input("datum needs gamma"))?.build()?;
        let gamma_names = if d.gamma_names.is_empty() {
            (1..=gamma.ngens()).map(|i| format!("g{i}")).collect()
        } else {
            d.gamma_names.clone()
        };
        let g = d.g.iter().map(|c| gamma.element(c.clone())).collect::<Result<Vec<GammaElem>>>()?;
        let chi = d
            .chi
            .iter()
            .map(|imgs| Character::new(ctx, &gamma, scalars(&ctx, imgs)?))
            .collect::<Result<Vec<_>>>()?;
        let mut lambda = BTreeMap::new();
        for l in &d.lambda {
            lambda.insert((l.i, l.j), scalar(&ctx, &l.value)?);
        }
        let datum = CartanDatum {
            ctx,
            gamma,
            gamma_names,
            names: d.names.clone(),
            g,
            chi,
            cartan: d.cartan.clone(),
            lambda,
        };
        let r = datum.names.len();
        if datum.g.len() != r || datum.chi.len() != r || datum.cartan.len() != r || datum.cartan.iter().any(|row| row.len() != r) {
            return Err(Error::invalid_input(format!(
                "datum sizes disagree: {} names, {} g, {} chi, cartan {}x?",
                r,
                datum.g.len(),
                datum.chi.len(),
                datum.cartan.len()
            )));
        }
        Ok(datum)
    }

    pub fn characters(&self, ctx: FieldCtx) -> Result<(FgAbelianGroup, Vec<Character>)> {
        let c = self.characters.as_ref().ok_or_else(|| Error::invalid_input("missing [characters] section"))?;
        let gamma = c.gamma.build()?;
        let chars = c
            .images
            .iter()
            .map(|imgs| Character::new(ctx, &gamma, scalars(&ctx, imgs)?))
            .collect::<Result<Vec<_>>>()?;
        Ok((gamma, chars))
    }

    pub fn color_lie(&self, ctx: FieldCtx) -> Result<ColorLieSuperalgebra> {
        let c = self.colorlie.as_ref().ok_or_else(|| Error::invalid_input("missing [colorlie] section"))?;
        let t = FgAbelianGroup::new(0, c.torsion.clone())?;
        let beta = if c.beta.is_empty() && c.torsion.is_empty() {
            Bicharacter::trivial(ctx)
        } else {
            Bicharacter::new(ctx, t.clone(), c.beta.iter().map(|r| scalars(&ctx, r)).collect::<Result<_>>()?)?
        };
        let degrees = if c.degrees.is_empty() {
            vec![t.identity(); c.names.len()]
        } else {
            c.degrees.iter().map(|d| t.element(d.clone())).collect::<Result<Vec<_>>>()?
        };
        let mut l = ColorLieSuperalgebra::new(beta, c.names.clone(), degrees)?;
        let idx = |name: &str| {
            c.names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::invalid_input(format!("unknown basis element {name}")))
        };
        let mut table: BTreeMap<(usize, usize), Vec<Scalar>> = BTreeMap::new();
        for b in &c.brackets {
            let (i, j, k) = (idx(&b.x)?, idx(&b.y)?, idx(&b.z)?);
            let v = table.entry((i, j)).or_insert_with(|| vec![Scalar::zero(); c.names.len()]);
            v[k] = &v[k] + &scalar(&ctx, &b.c)?;
        }
        for ((i, j), v) in table {
            l.set_bracket_pair(i, j, v)?;
        }
        Ok(l)
    }

    pub fn action(&self, ctx: FieldCtx, l: &ColorLieSuperalgebra) -> Result<GradedGroupAction> {
        let Some(a) = &self.action else {
            return Ok(GradedGroupAction::trivial(FiniteGroup::cyclic(1)?, l.dim()));
        };
        let group = a.group.build()?;
        let gens = a
            .generators
            .iter()
            .map(|g| Ok((g.element, matrix(&ctx, &g.matrix)?)))
            .collect::<Result<Vec<_>>>()?;
        GradedGroupAction::from_generators(l, group, &gens)
    }

    pub fn witness(&self, ctx: FieldCtx, l: &ColorLieSuperalgebra) -> Result<(Vec<Vec<Scalar>>, Vec<usize>)> {
        let w = self.witness.as_ref().ok_or_else(|| Error::invalid_input("missing [witness] section"))?;
        let mut m = w.m.iter().map(|r| scalars(&ctx, r)).collect::<Result<Vec<_>>>()?;
        for name in &w.m_basis {
            let i = l
                .names()
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::invalid_input(format!("unknown basis element {name}")))?;
            m.push(l.unit(i));
        }
        Ok((m, w.a.clone()))
    }

    pub fn rep(&self, ctx: FieldCtx) -> Result<MatrixRep<Scalar>> {
        let r = self.rep.as_ref().ok_or_else(|| Error::invalid_input("missing [rep] section"))?;
        let mats = r
            .generators
            .iter()
            .map(|(k, m)| Ok((k.clone(), matrix(&ctx, m)?)))
            .collect::<Result<Vec<_>>>()?;
        MatrixRep::new(r.dim, mats)
    }

    pub fn tensor(&self, ctx: FieldCtx) -> Result<Option<(Bilinear, Option<usize>)>> {
        let Some(t) = &self.tensor else { return Ok(None) };
        let data = t
            .t
            .iter()
            .map(|slice| slice.iter().map(|r| scalars(&ctx, r)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Some((Bilinear::new(data)?, t.trials)))
    }

    /// The identity template and shape, with `--standard` taking precedence.
    pub fn template(&self, ctx: FieldCtx, standard: Option<usize>) -> Result<(MultilinearTemplate, Shape)> {
        let spec = self.identity.clone().unwrap_or_default();
        let t = match standard.or(spec.standard) {
            Some(d) => MultilinearTemplate::standard(d),
            None if !spec.coeffs.is_empty() => {
                let d = spec.degree.ok_or_else(|| Error::invalid_input("[identity] coeffs need degree"))?;
                MultilinearTemplate::new(d, scalars(&ctx, &spec.coeffs)?)?
            }
            None => return Err(Error::invalid_input("no identity given: use --standard or an [identity] section")),
        };
        let shape = match spec.shape.as_deref().unwrap_or("plain") {
            "plain" => Shape::Plain,
            "ad" => Shape::AdForm,
            "qcomm" => {
                let q = spec.q.as_deref().ok_or_else(|| Error::invalid_input("qcomm shape needs q"))?;
                Shape::QComm(scalar(&ctx, q)?)
            }
            other => return Err(Error::invalid_input(format!("unknown shape {other}"))),
        };
        Ok((t, shape))
    }
}
