use std::fmt;

use crate::formula::{Formula, Schema};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseLogic {
    Mtl,
    Smtl,
    Imtl,
    Wnm,
    Nm,
    Bl,
    Sbl,
    Luk,
    Pi,
    G,
}

impl BaseLogic {
    pub const ALL: [BaseLogic; 10] = [
        BaseLogic::Mtl,
        BaseLogic::Smtl,
        BaseLogic::Imtl,
        BaseLogic::Wnm,
        BaseLogic::Nm,
        BaseLogic::Bl,
        BaseLogic::Sbl,
        BaseLogic::Luk,
        BaseLogic::Pi,
        BaseLogic::G,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseLogic::Mtl => "MTL",
            BaseLogic::Smtl => "SMTL",
            BaseLogic::Imtl => "IMTL",
            BaseLogic::Wnm => "WNM",
            BaseLogic::Nm => "NM",
            BaseLogic::Bl => "BL",
            BaseLogic::Sbl => "SBL",
            BaseLogic::Luk => "Luk",
            BaseLogic::Pi => "Pi",
            BaseLogic::G => "G",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        let s = match s {
            "Ł" | "L" => "Luk",
            "Π" => "Pi",
            other => other,
        };
        BaseLogic::ALL.into_iter().find(|b| b.name() == s)
    }

    /// The additional axioms over MTL.
    pub fn extra_axioms(self) -> &'static [&'static str] {
        match self {
            BaseLogic::Mtl => &[],
            BaseLogic::Smtl => &["PC"],
            BaseLogic::Imtl => &["Inv"],
            BaseLogic::Wnm => &["WNM"],
            BaseLogic::Nm => &["Inv", "WNM"],
            BaseLogic::Bl => &["Div"],
            BaseLogic::Sbl => &["Div", "PC"],
            BaseLogic::Luk => &["Div", "Inv"],
            BaseLogic::Pi => &["Div", "C"],
            BaseLogic::G => &["Con"],
        }
    }

    pub fn extends_bl(self) -> bool {
        matches!(self, BaseLogic::Bl | BaseLogic::Sbl | BaseLogic::Luk | BaseLogic::Pi | BaseLogic::G)
    }
}

/// Which operator extension sits on top of the base logic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Plain,
    Circ,
    CircNN,
    /// The `(B1)`–`(B4)` plus `(○Nec)` axiomatization of `CircNN`.
    CircNNPlus,
    CircC,
    CircMin,
    CircMax,
    CircDat,
    Bullet,
    BulletNN,
    BulletC,
    BulletMin,
    BulletMax,
}

impl Variant {
    pub const ALL: [Variant; 13] = [
        Variant::Plain,
        Variant::Circ,
        Variant::CircNN,
        Variant::CircNNPlus,
        Variant::CircC,
        Variant::CircMin,
        Variant::CircMax,
        Variant::CircDat,
        Variant::Bullet,
        Variant::BulletNN,
        Variant::BulletC,
        Variant::BulletMin,
        Variant::BulletMax,
    ];

    pub fn suffix(self) -> &'static str {
        match self {
            Variant::Plain => "",
            Variant::Circ => "O",
            Variant::CircNN => "O~~",
            Variant::CircNNPlus => "O~~+",
            Variant::CircC => "Oc",
            Variant::CircMin => "Omin",
            Variant::CircMax => "Omax",
            Variant::CircDat => "Odat",
            Variant::Bullet => "#",
            Variant::BulletNN => "#~~",
            Variant::BulletC => "#c",
            Variant::BulletMin => "#min",
            Variant::BulletMax => "#max",
        }
    }

    pub fn has_circ(self) -> bool {
        matches!(
            self,
            Variant::Circ
                | Variant::CircNN
                | Variant::CircNNPlus
                | Variant::CircC
                | Variant::CircMin
                | Variant::CircMax
                | Variant::CircDat
        )
    }

    pub fn has_bullet(self) -> bool {
        matches!(self, Variant::Bullet | Variant::BulletNN | Variant::BulletC | Variant::BulletMin | Variant::BulletMax)
    }

    /// The logic on the other side of the `○`/`•` translations, where the
    /// two are equivalent.
    pub fn dual(self) -> Option<Variant> {
        Some(match self {
            Variant::CircNN => Variant::BulletNN,
            Variant::CircC => Variant::BulletC,
            Variant::CircMin => Variant::BulletMax,
            Variant::CircMax => Variant::BulletMin,
            Variant::BulletNN => Variant::CircNN,
            Variant::BulletC => Variant::CircC,
            Variant::BulletMax => Variant::CircMin,
            Variant::BulletMin => Variant::CircMax,
            _ => return None,
        })
    }

    fn axioms(self, base: BaseLogic) -> Vec<&'static str> {
        let circ = ["OA1", "OA2", "OA3"];
        let bullet = ["IA1", "IA2", "IA3"];
        let mut out: Vec<&'static str> = match self {
            Variant::Plain => vec![],
            Variant::CircNNPlus => vec!["B1", "B2", "B3", "B4"],
            v if v.has_circ() => circ.to_vec(),
            _ => bullet.to_vec(),
        };
        match self {
            Variant::CircC => out.push("c"),
            Variant::CircMin => out.push("OA4"),
            Variant::CircDat => out.push("OEM"),
            Variant::CircMax if base.extends_bl() => out.push("Omax"),
            Variant::BulletC => out.push("Ic"),
            Variant::BulletMax => out.push("Imax"),
            _ => {}
        }
        out
    }

    fn rules(self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = match self {
            Variant::Plain => vec![],
            Variant::CircNNPlus => vec!["NN", "ONec"],
            v if v.has_circ() => vec!["Cong", "Coh"],
            _ => vec!["ICong", "ICoh"],
        };
        match self {
            Variant::CircNN | Variant::BulletNN => out.push("NN"),
            Variant::CircMax => out.push("NNo"),
            Variant::BulletMin => out.push("NNi"),
            _ => {}
        }
        out
    }
}

/// The text of every axiom schema, by identifier.
pub fn axiom_text(id: &str) -> Option<&'static str> {
    Some(match id {
        "A1" => "(phi -> psi) -> ((psi -> chi) -> (phi -> chi))",
        "A2" => "phi & psi -> phi",
        "A3" => "phi & psi -> psi & phi",
        "A4" => "phi /\\ psi -> phi",
        "A5" => "phi /\\ psi -> psi /\\ phi",
        "A6" => "phi & (phi -> psi) -> phi /\\ psi",
        "A7a" => "(phi -> (psi -> chi)) -> (phi & psi -> chi)",
        "A7b" => "(phi & psi -> chi) -> (phi -> (psi -> chi))",
        "A8" => "((phi -> psi) -> chi) -> (((psi -> phi) -> chi) -> chi)",
        "A9" => "0 -> phi",
        "Inv" => "~~phi -> phi",
        "C" => "~phi \\/ ((phi -> phi & psi) -> psi)",
        "Con" => "phi -> phi & phi",
        "Div" => "phi /\\ psi -> phi & (phi -> psi)",
        "PC" => "phi /\\ ~phi -> 0",
        "WNM" => "(phi & psi -> 0) \\/ (phi /\\ psi -> phi & psi)",
        "D1" => "D phi \\/ ~D phi",
        "D2" => "D (phi \\/ psi) -> D phi \\/ D psi",
        "D3" => "D phi -> phi",
        "D4" => "D phi -> D D phi",
        "D5" => "D (phi -> psi) -> (D phi -> D psi)",
        "OA1" => "~(phi /\\ ~phi /\\ O phi)",
        "OA2" => "O 1",
        "OA3" => "O 0",
        "OA4" => "phi \\/ ~phi \\/ ~O phi",
        "B1" => "~O phi \\/ phi \\/ ~phi",
        "B2" => "O (phi <-> psi) -> (O phi <-> O psi)",
        "B3" => "O (phi \\/ psi) -> O phi \\/ psi",
        "B4" => "O 0",
        "c" => "O phi \\/ ~O phi",
        "OEM" => "O phi -> phi \\/ ~phi",
        "Omax" => "(~~phi -> phi) \\/ O phi",
        "IA1" => "~(phi /\\ ~phi) \\/ #phi",
        "IA2" => "~#1",
        "IA3" => "~#0",
        "Ic" => "#phi \\/ ~#phi",
        "Imax" => "phi \\/ ~phi \\/ #phi",
        _ => return None,
    })
}

const MTL_AXIOMS: [&str; 10] = ["A1", "A2", "A3", "A4", "A5", "A6", "A7a", "A7b", "A8", "A9"];
const DELTA_AXIOMS: [&str; 5] = ["D1", "D2", "D3", "D4", "D5"];

/// Rule text: premises, conclusion, and whether `delta` is a side formula.
fn rule_text(id: &str) -> Option<(&'static [&'static str], &'static str, bool)> {
    Some(match id {
        "MP" => (&["phi", "phi -> psi"], "psi", false),
        "Adj" => (&["phi", "psi"], "phi /\\ psi", false),
        "NecD" => (&["phi"], "D phi", false),
        "ONec" => (&["phi"], "O phi", false),
        "Cong" => (&["(phi <-> psi) \\/ delta"], "(O phi <-> O psi) \\/ delta", true),
        "Coh" => (&["~~phi /\\ (phi -> psi) \\/ delta"], "(O phi -> O psi) \\/ delta", true),
        "ICong" => (&["(phi <-> psi) \\/ delta"], "(#phi <-> #psi) \\/ delta", true),
        "ICoh" => (&["~~phi /\\ (phi -> psi) \\/ delta"], "(#psi -> #phi) \\/ delta", true),
        "NN" => (&["~~phi \\/ delta"], "phi \\/ delta", true),
        "NNo" => (&["~~phi \\/ delta"], "O phi \\/ delta", true),
        "NNi" => (&["~~phi \\/ delta"], "~#phi \\/ delta", true),
        _ => return None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Plain,
    /// Carries a side formula `δ`; the `δ`-free form is accepted too.
    OrForm,
    /// Some premises must be theorems.
    Restricted,
}

#[derive(Clone, Debug)]
pub struct Axiom {
    pub id: String,
    pub schema: Schema,
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub id: String,
    pub premises: Vec<Schema>,
    pub conclusion: Schema,
    pub flavor: Flavor,
    /// Premise positions that must be discharged by theorems.
    pub theorem_premises: Vec<usize>,
    /// The `δ`-free instance of an `OrForm` rule.
    pub plain: Option<(Vec<Schema>, Schema)>,
}

impl Rule {
    fn build(id: &str) -> Rule {
        let (premises, conclusion, or_form) = rule_text(id).expect("known rule");
        let premises: Vec<Schema> = premises.iter().map(|p| meta(p)).collect();
        let conclusion = meta(conclusion);
        let plain = or_form.then(|| (premises.iter().map(strip_delta).collect(), strip_delta(&conclusion)));
        Rule {
            id: id.to_string(),
            premises,
            conclusion,
            flavor: if or_form { Flavor::OrForm } else { Flavor::Plain },
            theorem_premises: vec![],
            plain,
        }
    }

    /// The degree-preserving form: `MP-r` needs only the implication to be
    /// a theorem, every other `R-r` needs all premises to be theorems.
    fn restricted(&self) -> Rule {
        let theorem_premises = if self.id == "MP" { vec![1] } else { (0..self.premises.len()).collect() };
        Rule { id: format!("{}-r", self.id), flavor: Flavor::Restricted, theorem_premises, ..self.clone() }
    }

    pub fn arity(&self) -> usize {
        self.premises.len()
    }
}

fn meta(text: &str) -> Schema {
    Schema::parse_all_meta(text).expect("built-in schema parses")
}

fn strip_delta(s: &Schema) -> Schema {
    let formula = match &s.formula {
        Formula::Or(a, b) if **b == Formula::Var("delta".into()) => (**a).clone(),
        f => f.clone(),
    };
    let metavars = formula.vars();
    Schema { formula, metavars }
}

/// A Hilbert system: axiom schemas and inference rules.
#[derive(Clone, Debug)]
pub struct LogicProfile {
    pub name: String,
    pub base: BaseLogic,
    pub delta: bool,
    pub variant: Variant,
    /// Degree-preserving companion.
    pub degree: bool,
    pub axioms: Vec<Axiom>,
    pub rules: Vec<Rule>,
}

impl LogicProfile {
    pub fn new(base: BaseLogic, delta: bool, variant: Variant, degree: bool) -> Self {
        let mut ids: Vec<&str> = MTL_AXIOMS.to_vec();
        ids.extend(base.extra_axioms());
        if delta {
            ids.extend(DELTA_AXIOMS);
        }
        ids.extend(variant.axioms(base));
        let axioms =
            ids.into_iter().map(|id| Axiom { id: id.to_string(), schema: meta(axiom_text(id).unwrap()) }).collect();
        let mut truth_rules = vec![Rule::build("MP")];
        if delta {
            truth_rules.push(Rule::build("NecD"));
        }
        truth_rules.extend(variant.rules().into_iter().map(Rule::build));
        let rules = if degree {
            let mut rules = vec![Rule::build("Adj")];
            rules.extend(truth_rules.iter().map(Rule::restricted));
            rules
        } else {
            truth_rules
        };
        let mut name = base.name().to_string();
        if delta {
            name.push_str("_D");
        }
        if variant != Variant::Plain {
            name.push('_');
            name.push_str(variant.suffix());
        }
        if degree {
            name.push_str("<=");
        }
        LogicProfile { name, base, delta, variant, degree, axioms, rules }
    }

    pub fn axiom(&self, id: &str) -> Option<&Axiom> {
        self.axioms.iter().find(|a| a.id == id)
    }

    pub fn rule(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }

    pub fn has_circ(&self) -> bool {
        self.variant.has_circ()
    }

    pub fn has_bullet(&self) -> bool {
        self.variant.has_bullet()
    }

    pub fn has_delta(&self) -> bool {
        self.delta
    }

    /// The truth-preserving logic whose theorems this profile shares.
    pub fn truth_companion(&self) -> LogicProfile {
        LogicProfile::new(self.base, self.delta, self.variant, false)
    }

    /// The profile of the same family with `○`/`•` exchanged.
    pub fn dual(&self) -> Option<LogicProfile> {
        self.variant.dual().map(|v| LogicProfile::new(self.base, self.delta, v, self.degree))
    }

    /// Which of `○`, `•`, `Δ` the formula uses outside this language.
    pub fn foreign_connective(&self, f: &Formula) -> Option<&'static str> {
        if f.uses_circ() && !self.has_circ() {
            Some("○")
        } else if f.uses_bullet() && !self.has_bullet() {
            Some("•")
        } else if f.uses_delta() && !self.has_delta() {
            Some("Δ")
        } else {
            None
        }
    }
}

impl fmt::Display for LogicProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Every built-in profile name.
pub fn profile_names() -> Vec<String> {
    let mut out = Vec::new();
    for base in BaseLogic::ALL {
        for variant in Variant::ALL {
            for degree in [false, true] {
                out.push(LogicProfile::new(base, false, variant, degree).name);
            }
        }
        for degree in [false, true] {
            out.push(LogicProfile::new(base, true, Variant::Plain, degree).name);
        }
    }
    out
}

/// Look up a profile by name: a base logic, optionally `_D`, optionally
/// `_` and an operator suffix, optionally `<=`. Unicode spellings such as
/// `MTL_○¬¬≤` are accepted.
pub fn load_profile(name: &str) -> Result<LogicProfile, super::ProofError> {
    let unknown = || super::ProofError::UnknownProfile(name.to_string());
    let ascii = name
        .trim()
        .replace('○', "O")
        .replace('•', "#")
        .replace('¬', "~")
        .replace('≤', "<=")
        .replace('⁺', "+")
        .replace(['Δ', '△'], "_D");
    let (body, degree) = match ascii.strip_suffix("<=") {
        Some(b) => (b, true),
        None => (ascii.as_str(), false),
    };
    let mut parts = body.split('_').filter(|p| !p.is_empty());
    let base = parts.next().and_then(BaseLogic::from_name).ok_or_else(unknown)?;
    let mut delta = false;
    let mut variant = Variant::Plain;
    for part in parts {
        if part == "D" && !delta && variant == Variant::Plain {
            delta = true;
        } else if variant == Variant::Plain {
            variant =
                Variant::ALL.into_iter().find(|v| *v != Variant::Plain && v.suffix() == part).ok_or_else(unknown)?;
        } else {
            return Err(unknown());
        }
    }
    Ok(LogicProfile::new(base, delta, variant, degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(p: &LogicProfile) -> (Vec<&str>, Vec<&str>) {
        (p.axioms.iter().map(|a| a.id.as_str()).collect(), p.rules.iter().map(|r| r.id.as_str()).collect())
    }

    #[test]
    fn mtl_has_ten_axioms_and_modus_ponens() {
        let p = load_profile("MTL").unwrap();
        let (ax, rules) = ids(&p);
        assert_eq!(ax.len(), 10);
        assert_eq!(rules, vec!["MP"]);
    }

    #[test]
    fn circ_profiles() {
        let p = load_profile("MTL_O").unwrap();
        let (ax, rules) = ids(&p);
        assert_eq!(&ax[10..], &["OA1", "OA2", "OA3"]);
        assert_eq!(rules, vec!["MP", "Cong", "Coh"]);
        let d = load_profile("MTL_O<=").unwrap();
        let (dax, drules) = ids(&d);
        assert_eq!(dax, ax);
        assert_eq!(drules, vec!["Adj", "MP-r", "Cong-r", "Coh-r"]);
        assert_eq!(load_profile("MTL_○¬¬⁺").unwrap().name, "MTL_O~~+");
        assert_eq!(load_profile("Ł_Omax").unwrap().axiom("Omax").map(|a| a.id.as_str()), Some("Omax"));
        assert!(load_profile("MTL_Omax").unwrap().axiom("Omax").is_none());
    }

    #[test]
    fn restricted_rules_only_in_degree_profiles() {
        for name in profile_names() {
            let p = load_profile(&name).unwrap();
            assert_eq!(p.name, name);
            let restricted = p.rules.iter().any(|r| r.flavor == Flavor::Restricted);
            assert_eq!(restricted, p.degree, "{name}");
        }
    }

    #[test]
    fn delta_and_extensions() {
        let p = load_profile("MTLΔ").unwrap();
        assert_eq!(p.name, "MTL_D");
        assert_eq!(p.axioms.len(), 15);
        assert!(p.rule("NecD").is_some());
        assert_eq!(load_profile("NM").unwrap().axioms.len(), 12);
        assert!(load_profile("XYZ").is_err());
        assert!(load_profile("MTL_O_O").is_err());
    }

    #[test]
    fn or_form_has_plain_instance() {
        let cong = Rule::build("Cong");
        let (prem, concl) = cong.plain.unwrap();
        assert_eq!(prem[0].formula.to_string(), "phi <-> psi");
        assert_eq!(concl.formula.to_string(), "O phi <-> O psi");
    }
}
