//! Scenario documents: structured-text descriptions of a single model run.
//!
//! A scenario file is TOML with a top-level `model` tag naming one of the
//! seven model families, an `output` subdirectory for its result files, and
//! exactly one parameter section named after the tag:
//!
//! ```toml
//! model = "oscillator"
//! output = "oscillator-demo"
//!
//! [oscillator]
//! mass = 1.0       # [kg]
//! stiffness = 1.0  # [N/m]
//! damping = 0.6    # [kg/s]
//! x0 = 1.0         # [m]
//! v0 = 0.0         # [m/s]
//! t-end = 30.0     # [s]
//! n-outputs = 300
//! ```
//!
//! Parsing is strict — unknown keys are rejected — and semantic validation
//! reports *every* violated constraint with its field path rather than
//! stopping at the first. All physical parameters must be written out;
//! the only defaulted values are the ones the models fix globally
//! (gravity 9.81 m/s², layer cutoff 2, CFL number 0.45) and purely
//! numerical switches.

use serde::{Deserialize, Serialize};

use mslab_core::potential::PotentialSpec;
use mslab_core::sorption1d::InitialProfile;
use mslab_core::stepper::Scheme;
use mslab_core::swe::{
    BoundaryCondition, Channel, ChannelEnd, ChannelNetwork, EdgeLink, JunctionEdge,
    JunctionElement, SwState1d, SwState2d,
};
use mslab_core::ShapeDescriptor;

/// One violated constraint: the offending field and what went wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    /// Dotted path of the field inside the document (TOML key spelling).
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for Issue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

fn issue(issues: &mut Vec<Issue>, path: impl Into<String>, message: impl Into<String>) {
    issues.push(Issue {
        path: path.into(),
        message: message.into(),
    });
}

/// `true` if `v` is a finite, strictly positive number.
fn positive(v: f64) -> bool {
    v.is_finite() && v > 0.0
}

/// `true` if `v` is finite and non-negative.
fn non_negative(v: f64) -> bool {
    v.is_finite() && v >= 0.0
}

fn check_positive(issues: &mut Vec<Issue>, path: &str, v: f64) {
    if !positive(v) {
        issue(issues, path, format!("must be positive (got {v})"));
    }
}

fn check_non_negative(issues: &mut Vec<Issue>, path: &str, v: f64) {
    if !non_negative(v) {
        issue(issues, path, format!("must be ≥ 0 (got {v})"));
    }
}

fn check_finite(issues: &mut Vec<Issue>, path: &str, v: f64) {
    if !v.is_finite() {
        issue(issues, path, format!("must be finite (got {v})"));
    }
}

pub const MODEL_TAGS: [&str; 7] = [
    "oscillator",
    "pendulum",
    "sorption1d",
    "sorption1d-compare",
    "sorption2d",
    "sw-network",
    "euler-eigen",
];

fn default_gravity() -> f64 {
    9.81
}

fn default_cutoff() -> f64 {
    2.0
}

fn default_cfl() -> f64 {
    mslab_core::swe::DEFAULT_CFL
}

/// A fully described scenario: the model tag, the output subdirectory and
/// one parameter section matching the tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    /// Which model family to run; one of [`MODEL_TAGS`].
    pub model: String,
    /// Subdirectory (under the output root) receiving the result files.
    pub output: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oscillator: Option<OscillatorDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pendulum: Option<PendulumDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sorption1d: Option<Sorption1dDoc>,
    #[serde(rename = "sorption1d-compare", skip_serializing_if = "Option::is_none")]
    pub sorption1d_compare: Option<Sorption1dCompareDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sorption2d: Option<Sorption2dDoc>,
    #[serde(rename = "sw-network", skip_serializing_if = "Option::is_none")]
    pub sw_network: Option<SwNetworkDoc>,
    #[serde(rename = "euler-eigen", skip_serializing_if = "Option::is_none")]
    pub euler_eigen: Option<EulerEigenDoc>,
}

impl ScenarioDoc {
    /// Parses a scenario document from TOML text.
    ///
    /// Syntax errors (malformed TOML, unknown keys, wrong value types) are
    /// reported as a single issue; they make further semantic checks
    /// meaningless.
    pub fn from_toml(text: &str) -> Result<Self, Vec<Issue>> {
        toml::from_str(text).map_err(|e| {
            vec![Issue {
                path: "<document>".to_string(),
                message: e.to_string(),
            }]
        })
    }

    /// Serializes the document back to TOML. Round-trips through
    /// [`ScenarioDoc::from_toml`].
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario documents serialize to TOML")
    }

    /// Runs every semantic check and returns the full list of violations;
    /// an empty list means the scenario is ready to run.
    pub fn validate(&self) -> Vec<Issue> {
        let mut issues = Vec::new();
        if !MODEL_TAGS.contains(&self.model.as_str()) {
            issue(
                &mut issues,
                "model",
                format!(
                    "unknown model tag {:?} (known: {})",
                    self.model,
                    MODEL_TAGS.join(", ")
                ),
            );
        }
        if self.output.is_empty() {
            issue(&mut issues, "output", "output subdirectory must not be empty");
        } else if self.output.contains("..") || self.output.starts_with('/') {
            issue(
                &mut issues,
                "output",
                "output must be a relative path without '..'",
            );
        }

        // Exactly the section named by the tag must be present.
        let sections: [(&str, bool); 7] = [
            ("oscillator", self.oscillator.is_some()),
            ("pendulum", self.pendulum.is_some()),
            ("sorption1d", self.sorption1d.is_some()),
            ("sorption1d-compare", self.sorption1d_compare.is_some()),
            ("sorption2d", self.sorption2d.is_some()),
            ("sw-network", self.sw_network.is_some()),
            ("euler-eigen", self.euler_eigen.is_some()),
        ];
        for (name, present) in sections {
            if name == self.model {
                if !present {
                    issue(
                        &mut issues,
                        name,
                        format!("section [{name}] is required when model = {:?}", self.model),
                    );
                }
            } else if present {
                issue(
                    &mut issues,
                    name,
                    format!("section [{name}] does not match model = {:?}", self.model),
                );
            }
        }

        if let Some(d) = &self.oscillator {
            d.validate(&mut issues);
        }
        if let Some(d) = &self.pendulum {
            d.validate(&mut issues);
        }
        if let Some(d) = &self.sorption1d {
            d.validate(&mut issues);
        }
        if let Some(d) = &self.sorption1d_compare {
            d.validate(&mut issues);
        }
        if let Some(d) = &self.sorption2d {
            d.validate(&mut issues);
        }
        if let Some(d) = &self.sw_network {
            d.validate(&mut issues);
        }
        if let Some(d) = &self.euler_eigen {
            d.validate(&mut issues);
        }
        issues
    }
}

// ---------------------------------------------------------------------------
// Oscillator
// ---------------------------------------------------------------------------

/// Linearly damped harmonic oscillator `m x″ + γ x′ + k x = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct OscillatorDoc {
    /// Mass `m` \[kg\].
    pub mass: f64,
    /// Spring constant `k` \[N/m\]; zero selects the spring-free decay.
    pub stiffness: f64,
    /// Damping coefficient `γ` \[kg/s\].
    pub damping: f64,
    /// Initial displacement \[m\].
    pub x0: f64,
    /// Initial velocity \[m/s\].
    pub v0: f64,
    /// Simulated horizon \[s\].
    pub t_end: f64,
    /// Number of output intervals; the trajectory file has `n-outputs + 1` rows.
    pub n_outputs: usize,
    /// Also tabulate the overdamped-limit solution `x0·e^{−t k/γ}` and report
    /// the sup of the relative deviation past the fast transient. Requires
    /// positive damping and stiffness.
    #[serde(default)]
    pub compare_overdamped: bool,
}

impl OscillatorDoc {
    fn validate(&self, issues: &mut Vec<Issue>) {
        check_positive(issues, "oscillator.mass", self.mass);
        check_non_negative(issues, "oscillator.stiffness", self.stiffness);
        check_non_negative(issues, "oscillator.damping", self.damping);
        if self.stiffness == 0.0 && self.damping == 0.0 {
            issue(
                issues,
                "oscillator.stiffness",
                "stiffness and damping cannot both vanish (free flight has no time scale)",
            );
        }
        check_finite(issues, "oscillator.x0", self.x0);
        check_finite(issues, "oscillator.v0", self.v0);
        check_positive(issues, "oscillator.t-end", self.t_end);
        if self.n_outputs == 0 {
            issue(issues, "oscillator.n-outputs", "need at least one output interval");
        }
        if self.compare_overdamped && !(self.damping > 0.0 && self.stiffness > 0.0) {
            issue(
                issues,
                "oscillator.compare-overdamped",
                "the overdamped limit needs positive damping and stiffness",
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Pendulum
// ---------------------------------------------------------------------------

/// Stiff-spring pendulum against the rigid pendulum it converges to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct PendulumDoc {
    /// Bob mass \[kg\].
    pub mass: f64,
    /// Natural spring length = rod length \[m\].
    pub length: f64,
    /// Spring constant \[N/m\]; larger values approach the rigid rod.
    pub stiffness: f64,
    /// Release angle from the downward vertical \[deg\].
    pub theta0_deg: f64,
    /// Simulated horizon \[s\].
    pub t_end: f64,
    /// Number of output intervals.
    pub n_outputs: usize,
    /// Gravitational acceleration \[m/s²\].
    #[serde(default = "default_gravity")]
    pub gravity: f64,
    /// Step of the rigid-pendulum reference integrator \[s\].
    pub rigid_dt: f64,
}

impl PendulumDoc {
    fn validate(&self, issues: &mut Vec<Issue>) {
        check_positive(issues, "pendulum.mass", self.mass);
        check_positive(issues, "pendulum.length", self.length);
        check_positive(issues, "pendulum.stiffness", self.stiffness);
        check_finite(issues, "pendulum.theta0-deg", self.theta0_deg);
        if self.theta0_deg.is_finite() && self.theta0_deg.abs() >= 180.0 {
            issue(
                issues,
                "pendulum.theta0-deg",
                format!("release angle must lie in (−180°, 180°) (got {})", self.theta0_deg),
            );
        }
        check_positive(issues, "pendulum.t-end", self.t_end);
        if self.n_outputs == 0 {
            issue(issues, "pendulum.n-outputs", "need at least one output interval");
        }
        check_positive(issues, "pendulum.gravity", self.gravity);
        check_positive(issues, "pendulum.rigid-dt", self.rigid_dt);
        if positive(self.rigid_dt) && positive(self.t_end) && self.rigid_dt > self.t_end {
            issue(issues, "pendulum.rigid-dt", "reference step exceeds the horizon");
        }
    }

    pub fn params(&self) -> mslab_core::PendulumParams {
        mslab_core::PendulumParams {
            m: self.mass,
            length: self.length,
            k: self.stiffness,
            g: self.gravity,
            theta0: self.theta0_deg.to_radians(),
        }
    }
}

// ---------------------------------------------------------------------------
// Sorption, one-dimensional
// ---------------------------------------------------------------------------

/// Time-stepping scheme selector shared by the diffusion scenarios.
pub fn parse_scheme(name: &str) -> Option<Scheme> {
    match name {
        "explicit-euler" => Some(Scheme::ExplicitEuler),
        "rk4" => Some(Scheme::Rk4),
        "implicit-euler" => Some(Scheme::ImplicitEuler),
        "crank-nicolson" => Some(Scheme::CrankNicolson),
        _ => None,
    }
}

pub const SCHEME_NAMES: &str = "explicit-euler, rk4, implicit-euler, crank-nicolson";

/// Scheme name for serialization.
pub fn scheme_name(s: Scheme) -> &'static str {
    match s {
        Scheme::ExplicitEuler => "explicit-euler",
        Scheme::Rk4 => "rk4",
        Scheme::ImplicitEuler => "implicit-euler",
        Scheme::CrankNicolson => "crank-nicolson",
    }
}

fn parse_initial(name: &str) -> Option<InitialProfile> {
    match name {
        "uniform" => Some(InitialProfile::Uniform),
        "cosine" => Some(InitialProfile::CosineBump),
        _ => None,
    }
}

/// Interaction potential of the resolved sorption model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct PotentialDoc {
    /// Potential family: `lennard-jones`, `gaussian-well`, `square-well` or
    /// `flat`.
    pub kind: String,
    /// Interaction layer width `ε` \[m\].
    pub epsilon: f64,
    /// Dimensionless tail cutoff `L`; the layer integral runs to `ξ = L + 1`.
    #[serde(default = "default_cutoff")]
    pub cutoff: f64,
    /// Well depth \[k_B·T\] (`lennard-jones` and `square-well`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    /// Repulsive Gaussian amplitude \[k_B·T\] (`gaussian-well`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a1: Option<f64>,
    /// Repulsive Gaussian decay rate \[-\] (`gaussian-well`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b1: Option<f64>,
    /// Attractive Gaussian amplitude \[k_B·T\] (`gaussian-well`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a2: Option<f64>,
    /// Attractive Gaussian decay rate \[-\] (`gaussian-well`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b2: Option<f64>,
    /// Wall position of the Gaussian potential \[m\].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
}

impl PotentialDoc {
    fn validate(&self, path: &str, issues: &mut Vec<Issue>) {
        if !positive(self.epsilon) {
            issue(
                issues,
                format!("{path}.epsilon"),
                format!("epsilon must be positive (got {})", self.epsilon),
            );
        }
        check_positive(issues, &format!("{path}.cutoff"), self.cutoff);
        let needs_phi = matches!(self.kind.as_str(), "lennard-jones" | "square-well");
        let needs_gauss = self.kind == "gaussian-well";
        match self.kind.as_str() {
            "lennard-jones" | "square-well" | "gaussian-well" | "flat" => {}
            other => issue(
                issues,
                format!("{path}.kind"),
                format!(
                    "unknown potential {other:?} (known: lennard-jones, gaussian-well, square-well, flat)"
                ),
            ),
        }
        if needs_phi {
            match self.phi {
                None => issue(
                    issues,
                    format!("{path}.phi"),
                    format!("required for kind = {:?}", self.kind),
                ),
                Some(p) => {
                    if !p.is_finite() {
                        issue(issues, format!("{path}.phi"), format!("must be finite (got {p})"));
                    }
                }
            }
        } else if self.phi.is_some() {
            issue(
                issues,
                format!("{path}.phi"),
                format!("only valid for lennard-jones and square-well (kind = {:?})", self.kind),
            );
        }
        let gauss_fields = [
            ("a1", self.a1),
            ("b1", self.b1),
            ("a2", self.a2),
            ("b2", self.b2),
            ("x0", self.x0),
        ];
        for (name, value) in gauss_fields {
            if needs_gauss {
                match value {
                    None => issue(
                        issues,
                        format!("{path}.{name}"),
                        "required for kind = \"gaussian-well\"",
                    ),
                    Some(v) => {
                        if !v.is_finite() {
                            issue(
                                issues,
                                format!("{path}.{name}"),
                                format!("must be finite (got {v})"),
                            );
                        }
                    }
                }
            } else if value.is_some() {
                issue(
                    issues,
                    format!("{path}.{name}"),
                    format!("only valid for kind = \"gaussian-well\" (kind = {:?})", self.kind),
                );
            }
        }
        if needs_gauss {
            if let (Some(b1), Some(b2)) = (self.b1, self.b2) {
                if b1.is_finite() && b1 <= 0.0 {
                    issue(issues, format!("{path}.b1"), format!("decay rate must be positive (got {b1})"));
                }
                if b2.is_finite() && b2 <= 0.0 {
                    issue(issues, format!("{path}.b2"), format!("decay rate must be positive (got {b2})"));
                }
            }
        }
    }

    /// Builds the core potential; call only on a validated document.
    pub fn spec(&self) -> PotentialSpec {
        match self.kind.as_str() {
            "lennard-jones" => PotentialSpec::LennardJones {
                eps: self.epsilon,
                phi: self.phi.expect("validated"),
                cutoff: self.cutoff,
            },
            "square-well" => PotentialSpec::SquareWell {
                eps: self.epsilon,
                phi: self.phi.expect("validated"),
                cutoff: self.cutoff,
            },
            "gaussian-well" => PotentialSpec::GaussianWell {
                eps: self.epsilon,
                a1: self.a1.expect("validated"),
                b1: self.b1.expect("validated"),
                a2: self.a2.expect("validated"),
                b2: self.b2.expect("validated"),
                x0: self.x0.expect("validated"),
                cutoff: self.cutoff,
            },
            "flat" => PotentialSpec::Flat {
                eps: self.epsilon,
                cutoff: self.cutoff,
            },
            other => unreachable!("unvalidated potential kind {other:?}"),
        }
    }
}

/// One-dimensional sorption run: either the resolved drift-diffusion model
/// in an explicit wall potential (`variant = "resolved"`) or the reduced
/// pure-diffusion model with the dynamic sorption wall condition
/// (`variant = "reduced"`, on the unit interval).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Sorption1dDoc {
    /// `"reduced"` or `"resolved"`.
    pub variant: String,
    /// Diffusivity `D` \[m²/s\].
    pub diffusivity: f64,
    /// Simulated horizon \[s\].
    pub t_end: f64,
    /// Time step \[s\]; `t-end` must divide into `n-outputs` blocks of whole
    /// steps.
    pub dt: f64,
    /// Time scheme: one of `explicit-euler`, `rk4`, `implicit-euler`,
    /// `crank-nicolson`.
    pub scheme: String,
    /// Number of grid cells.
    pub n_cells: usize,
    /// Number of output intervals; profiles are written at each boundary.
    pub n_outputs: usize,
    /// Initial bulk profile: `uniform` (≡1) or `cosine` (1 + cos(πx)/2).
    pub initial: String,
    /// Adsorption length of the left wall \[m\] (`reduced` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_left: Option<f64>,
    /// Adsorption length of an optional right wall \[m\] (`reduced` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_right: Option<f64>,
    /// Right edge of the resolved domain \[m\] (`resolved` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_right: Option<f64>,
    /// Wall potential (`resolved` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potential: Option<PotentialDoc>,
}

impl Sorption1dDoc {
    fn validate(&self, issues: &mut Vec<Issue>) {
        check_positive(issues, "sorption1d.diffusivity", self.diffusivity);
        check_positive(issues, "sorption1d.t-end", self.t_end);
        check_positive(issues, "sorption1d.dt", self.dt);
        if parse_scheme(&self.scheme).is_none() {
            issue(
                issues,
                "sorption1d.scheme",
                format!("unknown scheme {:?} (known: {SCHEME_NAMES})", self.scheme),
            );
        }
        if self.n_cells < 2 {
            issue(issues, "sorption1d.n-cells", "need at least two cells");
        }
        if self.n_outputs == 0 {
            issue(issues, "sorption1d.n-outputs", "need at least one output interval");
        }
        if parse_initial(&self.initial).is_none() {
            issue(
                issues,
                "sorption1d.initial",
                format!("unknown initial profile {:?} (known: uniform, cosine)", self.initial),
            );
        }
        if positive(self.t_end) && positive(self.dt) && self.n_outputs > 0 {
            let per_output = self.t_end / (self.n_outputs as f64 * self.dt);
            if (per_output - per_output.round()).abs() > 1e-6 * per_output.max(1.0)
                || per_output.round() < 1.0
            {
                issue(
                    issues,
                    "sorption1d.dt",
                    format!(
                        "t-end must split into n-outputs blocks of whole steps \
                         (t-end/(n-outputs·dt) = {per_output} is not a positive integer)"
                    ),
                );
            }
        }
        match self.variant.as_str() {
            "reduced" => {
                match self.m_left {
                    None => issue(
                        issues,
                        "sorption1d.m-left",
                        "required when variant = \"reduced\"",
                    ),
                    Some(m) => check_non_negative(issues, "sorption1d.m-left", m),
                }
                if let Some(m) = self.m_right {
                    check_non_negative(issues, "sorption1d.m-right", m);
                }
                if self.x_right.is_some() {
                    issue(
                        issues,
                        "sorption1d.x-right",
                        "only valid when variant = \"resolved\" (the reduced model lives on [0, 1])",
                    );
                }
                if self.potential.is_some() {
                    issue(
                        issues,
                        "sorption1d.potential",
                        "only valid when variant = \"resolved\"",
                    );
                }
            }
            "resolved" => {
                if self.m_left.is_some() || self.m_right.is_some() {
                    issue(
                        issues,
                        "sorption1d.m-left",
                        "adsorption lengths are computed from the potential; only valid when variant = \"reduced\"",
                    );
                }
                match self.x_right {
                    None => issue(
                        issues,
                        "sorption1d.x-right",
                        "required when variant = \"resolved\"",
                    ),
                    Some(x) => check_positive(issues, "sorption1d.x-right", x),
                }
                match &self.potential {
                    None => issue(
                        issues,
                        "sorption1d.potential",
                        "section required when variant = \"resolved\"",
                    ),
                    Some(p) => p.validate("sorption1d.potential", issues),
                }
                if let (Some(p), Some(x_right)) = (&self.potential, self.x_right) {
                    if positive(p.epsilon) && positive(p.cutoff) && positive(x_right) {
                        let layer_top = p.epsilon * (p.cutoff + 1.0);
                        if x_right <= 2.0 * layer_top {
                            issue(
                                issues,
                                "sorption1d.x-right",
                                format!(
                                    "domain must extend well past the interaction layer \
                                     (need x-right > 2·ε·(L+1) = {})",
                                    2.0 * layer_top
                                ),
                            );
                        }
                    }
                }
            }
            other => issue(
                issues,
                "sorption1d.variant",
                format!("unknown variant {other:?} (known: reduced, resolved)"),
            ),
        }
    }

    pub fn initial_profile(&self) -> InitialProfile {
        parse_initial(&self.initial).expect("validated")
    }

    pub fn scheme_enum(&self) -> Scheme {
        parse_scheme(&self.scheme).expect("validated")
    }
}

// ---------------------------------------------------------------------------
// Sorption, resolved vs. reduced comparison
// ---------------------------------------------------------------------------

/// Side-by-side integration of the resolved and the reduced sorption model
/// for a list of layer widths, reporting their bulk discrepancy per width.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Sorption1dCompareDoc {
    /// Layer widths `ε` to compare \[m\], strictly decreasing.
    pub epsilons: Vec<f64>,
    /// Lennard-Jones well depth \[k_B·T\].
    pub phi: f64,
    /// Dimensionless tail cutoff `L`.
    #[serde(default = "default_cutoff")]
    pub cutoff: f64,
    /// Diffusivity `D` \[m²/s\].
    pub diffusivity: f64,
    /// Final comparison time \[s\].
    pub t_end: f64,
    /// Errors are maximized over this many equispaced times in `(0, t-end]`.
    pub n_output_times: usize,
    /// Resolved-model resolution: cells per layer width `ε`.
    pub cells_per_eps: usize,
    /// Reduced-model cell count on `[0, 1]`.
    pub multiscale_cells: usize,
    /// Time step shared by both models \[s\].
    pub dt: f64,
    /// Time scheme shared by both models.
    pub scheme: String,
    /// Initial bulk profile: `uniform` or `cosine`.
    pub initial: String,
}

impl Sorption1dCompareDoc {
    fn validate(&self, issues: &mut Vec<Issue>) {
        if self.epsilons.is_empty() {
            issue(issues, "sorption1d-compare.epsilons", "need at least one layer width");
        }
        for (i, &e) in self.epsilons.iter().enumerate() {
            if !positive(e) {
                issue(
                    issues,
                    format!("sorption1d-compare.epsilons[{i}]"),
                    format!("epsilon must be positive (got {e})"),
                );
            }
        }
        if self
            .epsilons
            .windows(2)
            .any(|w| !(w[1] < w[0]))
        {
            issue(
                issues,
                "sorption1d-compare.epsilons",
                "layer widths must be strictly decreasing",
            );
        }
        check_finite(issues, "sorption1d-compare.phi", self.phi);
        check_positive(issues, "sorption1d-compare.cutoff", self.cutoff);
        check_positive(issues, "sorption1d-compare.diffusivity", self.diffusivity);
        check_positive(issues, "sorption1d-compare.t-end", self.t_end);
        if self.n_output_times == 0 {
            issue(issues, "sorption1d-compare.n-output-times", "need at least one output time");
        }
        if self.cells_per_eps == 0 {
            issue(issues, "sorption1d-compare.cells-per-eps", "need at least one cell per layer width");
        }
        if self.multiscale_cells < 2 {
            issue(issues, "sorption1d-compare.multiscale-cells", "need at least two cells");
        }
        check_positive(issues, "sorption1d-compare.dt", self.dt);
        if parse_scheme(&self.scheme).is_none() {
            issue(
                issues,
                "sorption1d-compare.scheme",
                format!("unknown scheme {:?} (known: {SCHEME_NAMES})", self.scheme),
            );
        }
        if parse_initial(&self.initial).is_none() {
            issue(
                issues,
                "sorption1d-compare.initial",
                format!("unknown initial profile {:?} (known: uniform, cosine)", self.initial),
            );
        }
        // The largest layer must still fit inside the unit interval.
        if let Some(&e0) = self.epsilons.first() {
            if positive(e0) && positive(self.cutoff) && e0 * (self.cutoff + 1.0) > 0.5 {
                issue(
                    issues,
                    "sorption1d-compare.epsilons[0]",
                    format!(
                        "interaction layer ε·(L+1) = {} would cover half the unit interval",
                        e0 * (self.cutoff + 1.0)
                    ),
                );
            }
        }
    }

    pub fn core_scenario(&self) -> mslab_core::sorption1d::SorptionCompareScenario {
        mslab_core::sorption1d::SorptionCompareScenario {
            phi: self.phi,
            cutoff: self.cutoff,
            diffusivity: self.diffusivity,
            t_end: self.t_end,
            n_output_times: self.n_output_times,
            cells_per_eps: self.cells_per_eps,
            multiscale_cells: self.multiscale_cells,
            dt: self.dt,
            scheme: parse_scheme(&self.scheme).expect("validated"),
            initial: parse_initial(&self.initial).expect("validated"),
        }
    }
}

// ---------------------------------------------------------------------------
// Sorption, two-dimensional
// ---------------------------------------------------------------------------

/// Embedded sorbing obstacle described by a level set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ShapeDoc {
    /// `circle`, `square-hole` or `union` (of circles).
    pub kind: String,
    /// Center \[m\] (`circle`, `square-hole`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<[f64; 2]>,
    /// Circle radius \[m\].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    /// Half side length of the square hole \[m\].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
    /// Member circles of a union.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circles: Option<Vec<CircleDoc>>,
}

/// One circle of a union shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct CircleDoc {
    /// Center \[m\].
    pub center: [f64; 2],
    /// Radius \[m\].
    pub radius: f64,
}

impl ShapeDoc {
    fn validate(&self, path: &str, issues: &mut Vec<Issue>) {
        let require = |issues: &mut Vec<Issue>, field: &str, present: bool| {
            if !present {
                issue(
                    issues,
                    format!("{path}.{field}"),
                    format!("required for kind = {:?}", self.kind),
                );
            }
        };
        let forbid = |issues: &mut Vec<Issue>, field: &str, present: bool| {
            if present {
                issue(
                    issues,
                    format!("{path}.{field}"),
                    format!("not valid for kind = {:?}", self.kind),
                );
            }
        };
        match self.kind.as_str() {
            "circle" => {
                require(issues, "center", self.center.is_some());
                require(issues, "radius", self.radius.is_some());
                forbid(issues, "half-width", self.half_width.is_some());
                forbid(issues, "circles", self.circles.is_some());
                if let Some(r) = self.radius {
                    if !positive(r) {
                        issue(issues, format!("{path}.radius"), format!("must be positive (got {r})"));
                    }
                }
            }
            "square-hole" => {
                require(issues, "center", self.center.is_some());
                require(issues, "half-width", self.half_width.is_some());
                forbid(issues, "radius", self.radius.is_some());
                forbid(issues, "circles", self.circles.is_some());
                if let Some(w) = self.half_width {
                    if !positive(w) {
                        issue(
                            issues,
                            format!("{path}.half-width"),
                            format!("must be positive (got {w})"),
                        );
                    }
                }
            }
            "union" => {
                require(issues, "circles", self.circles.is_some());
                forbid(issues, "center", self.center.is_some());
                forbid(issues, "radius", self.radius.is_some());
                forbid(issues, "half-width", self.half_width.is_some());
                if let Some(circles) = &self.circles {
                    if circles.len() < 2 {
                        issue(
                            issues,
                            format!("{path}.circles"),
                            "a union needs at least two circles",
                        );
                    }
                    for (i, c) in circles.iter().enumerate() {
                        if !positive(c.radius) {
                            issue(
                                issues,
                                format!("{path}.circles[{i}].radius"),
                                format!("must be positive (got {})", c.radius),
                            );
                        }
                        if !(c.center[0].is_finite() && c.center[1].is_finite()) {
                            issue(
                                issues,
                                format!("{path}.circles[{i}].center"),
                                "must be finite",
                            );
                        }
                    }
                }
            }
            other => issue(
                issues,
                format!("{path}.kind"),
                format!("unknown shape {other:?} (known: circle, square-hole, union)"),
            ),
        }
    }

    pub fn descriptor(&self) -> ShapeDescriptor {
        match self.kind.as_str() {
            "circle" => {
                let c = self.center.expect("validated");
                ShapeDescriptor::Circle {
                    center: (c[0], c[1]),
                    radius: self.radius.expect("validated"),
                }
            }
            "square-hole" => {
                let c = self.center.expect("validated");
                ShapeDescriptor::SquareHole {
                    center: (c[0], c[1]),
                    half_width: self.half_width.expect("validated"),
                }
            }
            "union" => ShapeDescriptor::Union(
                self.circles
                    .as_ref()
                    .expect("validated")
                    .iter()
                    .map(|c| ShapeDescriptor::Circle {
                        center: (c.center[0], c.center[1]),
                        radius: c.radius,
                    })
                    .collect(),
            ),
            other => unreachable!("unvalidated shape kind {other:?}"),
        }
    }
}

/// Two-dimensional sorption around an embedded obstacle on the square
/// `[−w, w]²` with reflecting outer walls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Sorption2dDoc {
    /// Half width `w` of the computational square \[m\].
    pub domain_half_width: f64,
    /// Cells per direction; the spacing is `2w / n-cells`.
    pub n_cells: usize,
    /// Diffusivity `D` \[m²/s\].
    pub diffusivity: f64,
    /// Adsorption length `M` of the obstacle surface \[m\].
    pub m: f64,
    /// Simulated horizon \[s\].
    pub t_end: f64,
    /// Number of output intervals.
    pub n_outputs: usize,
    /// Explicit time step \[s\]; omitted means the stable default `0.2·h²/D`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    /// Initial bulk profile: `uniform` (≡1) or `radial-bump`
    /// (`1 + A·exp(−((r−r0)/σ)²)` measured from the origin).
    pub initial: String,
    /// Bump amplitude `A` \[-\] (`radial-bump` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bump_amplitude: Option<f64>,
    /// Bump center radius `r0` \[m\] (`radial-bump` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bump_center_r: Option<f64>,
    /// Bump width `σ` \[m\] (`radial-bump` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bump_width: Option<f64>,
    /// The obstacle.
    pub shape: ShapeDoc,
}

impl Sorption2dDoc {
    fn validate(&self, issues: &mut Vec<Issue>) {
        check_positive(issues, "sorption2d.domain-half-width", self.domain_half_width);
        if self.n_cells < 8 {
            issue(issues, "sorption2d.n-cells", "need at least eight cells per direction");
        }
        check_positive(issues, "sorption2d.diffusivity", self.diffusivity);
        check_non_negative(issues, "sorption2d.m", self.m);
        check_positive(issues, "sorption2d.t-end", self.t_end);
        if self.n_outputs == 0 {
            issue(issues, "sorption2d.n-outputs", "need at least one output interval");
        }
        if let Some(dt) = self.dt {
            check_positive(issues, "sorption2d.dt", dt);
        }
        match self.initial.as_str() {
            "uniform" => {
                for (name, present) in [
                    ("bump-amplitude", self.bump_amplitude.is_some()),
                    ("bump-center-r", self.bump_center_r.is_some()),
                    ("bump-width", self.bump_width.is_some()),
                ] {
                    if present {
                        issue(
                            issues,
                            format!("sorption2d.{name}"),
                            "only valid for initial = \"radial-bump\"",
                        );
                    }
                }
            }
            "radial-bump" => {
                match self.bump_amplitude {
                    None => issue(
                        issues,
                        "sorption2d.bump-amplitude",
                        "required for initial = \"radial-bump\"",
                    ),
                    Some(a) => check_finite(issues, "sorption2d.bump-amplitude", a),
                }
                match self.bump_center_r {
                    None => issue(
                        issues,
                        "sorption2d.bump-center-r",
                        "required for initial = \"radial-bump\"",
                    ),
                    Some(r) => check_non_negative(issues, "sorption2d.bump-center-r", r),
                }
                match self.bump_width {
                    None => issue(
                        issues,
                        "sorption2d.bump-width",
                        "required for initial = \"radial-bump\"",
                    ),
                    Some(w) => check_positive(issues, "sorption2d.bump-width", w),
                }
            }
            other => issue(
                issues,
                "sorption2d.initial",
                format!("unknown initial profile {other:?} (known: uniform, radial-bump)"),
            ),
        }
        self.shape.validate("sorption2d.shape", issues);
    }

    /// Initial bulk concentration; call only on a validated document.
    pub fn initial_fn(&self) -> impl Fn(f64, f64) -> f64 + '_ {
        let uniform = self.initial == "uniform";
        let a = self.bump_amplitude.unwrap_or(0.0);
        let r0 = self.bump_center_r.unwrap_or(0.0);
        let w = self.bump_width.unwrap_or(1.0);
        move |x: f64, y: f64| {
            if uniform {
                1.0
            } else {
                let r = x.hypot(y);
                1.0 + a * (-((r - r0) / w).powi(2)).exp()
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Shallow-water networks
// ---------------------------------------------------------------------------

/// Initial state of one channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ChannelInitDoc {
    /// `uniform` or `dam-break`.
    pub kind: String,
    /// Depth \[m\] (`uniform`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    /// Depth left of the dam \[m\] (`dam-break`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_left: Option<f64>,
    /// Depth right of the dam \[m\] (`dam-break`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_right: Option<f64>,
    /// Dam position measured from the left end \[m\] (`dam-break`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split_x: Option<f64>,
    /// Axial velocity \[m/s\].
    pub u: f64,
}

/// One channel of the network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ChannelDoc {
    /// Channel length \[m\].
    pub length: f64,
    /// Number of cells.
    pub n_cells: usize,
    /// Axis direction \[deg\] (0° = +x, counterclockwise).
    pub angle_deg: f64,
    /// Left-end closure: `wall`, `transmissive` or `junction`.
    pub bc_left: String,
    /// Right-end closure: `wall`, `transmissive` or `junction`.
    pub bc_right: String,
    pub initial: ChannelInitDoc,
}

/// One edge of a junction polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct JunctionEdgeDoc {
    /// Edge length \[m\].
    pub length: f64,
    /// Outward-normal direction \[deg\].
    pub angle_deg: f64,
    /// `true` for a closed (reflecting) edge.
    #[serde(default)]
    pub wall: bool,
    /// Linked channel index (omit for walls).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub channel: Option<usize>,
    /// Linked channel end: `left` or `right` (omit for walls).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub end: Option<String>,
}

/// One polygonal junction element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct JunctionDoc {
    /// Element area \[m²\].
    pub area: f64,
    /// Initial depth \[m\].
    pub h0: f64,
    /// Initial x-velocity \[m/s\].
    pub u0: f64,
    /// Initial y-velocity \[m/s\].
    pub v0: f64,
    pub edges: Vec<JunctionEdgeDoc>,
}

/// A network of shallow-water channels coupled through two-dimensional
/// junction elements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SwNetworkDoc {
    /// Gravitational acceleration \[m/s²\].
    #[serde(default = "default_gravity")]
    pub gravity: f64,
    /// CFL number of the adaptive step.
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    /// Simulated horizon \[s\].
    pub t_end: f64,
    /// Number of output intervals.
    pub n_outputs: usize,
    pub channels: Vec<ChannelDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub junctions: Vec<JunctionDoc>,
}

impl SwNetworkDoc {
    fn validate(&self, issues: &mut Vec<Issue>) {
        check_positive(issues, "sw-network.gravity", self.gravity);
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            issue(
                issues,
                "sw-network.cfl",
                format!("need 0 < cfl ≤ 1 (got {})", self.cfl),
            );
        }
        check_positive(issues, "sw-network.t-end", self.t_end);
        if self.n_outputs == 0 {
            issue(issues, "sw-network.n-outputs", "need at least one output interval");
        }
        if self.channels.is_empty() {
            issue(issues, "sw-network.channels", "need at least one channel");
        }
        for (i, ch) in self.channels.iter().enumerate() {
            let p = format!("sw-network.channels[{i}]");
            check_positive(issues, &format!("{p}.length"), ch.length);
            if ch.n_cells == 0 {
                issue(issues, format!("{p}.n-cells"), "need at least one cell");
            }
            check_finite(issues, &format!("{p}.angle-deg"), ch.angle_deg);
            for (field, bc) in [("bc-left", &ch.bc_left), ("bc-right", &ch.bc_right)] {
                if !matches!(bc.as_str(), "wall" | "transmissive" | "junction") {
                    issue(
                        issues,
                        format!("{p}.{field}"),
                        format!("unknown closure {bc:?} (known: wall, transmissive, junction)"),
                    );
                }
            }
            let ip = format!("{p}.initial");
            match ch.initial.kind.as_str() {
                "uniform" => {
                    match ch.initial.h {
                        None => issue(issues, format!("{ip}.h"), "required for kind = \"uniform\""),
                        Some(h) => check_non_negative(issues, &format!("{ip}.h"), h),
                    }
                    for (f, present) in [
                        ("h-left", ch.initial.h_left.is_some()),
                        ("h-right", ch.initial.h_right.is_some()),
                        ("split-x", ch.initial.split_x.is_some()),
                    ] {
                        if present {
                            issue(
                                issues,
                                format!("{ip}.{f}"),
                                "only valid for kind = \"dam-break\"",
                            );
                        }
                    }
                }
                "dam-break" => {
                    if ch.initial.h.is_some() {
                        issue(issues, format!("{ip}.h"), "only valid for kind = \"uniform\"");
                    }
                    match ch.initial.h_left {
                        None => issue(issues, format!("{ip}.h-left"), "required for kind = \"dam-break\""),
                        Some(h) => check_non_negative(issues, &format!("{ip}.h-left"), h),
                    }
                    match ch.initial.h_right {
                        None => issue(issues, format!("{ip}.h-right"), "required for kind = \"dam-break\""),
                        Some(h) => check_non_negative(issues, &format!("{ip}.h-right"), h),
                    }
                    match ch.initial.split_x {
                        None => issue(issues, format!("{ip}.split-x"), "required for kind = \"dam-break\""),
                        Some(x) => {
                            if !(x.is_finite() && x > 0.0 && x < ch.length) {
                                issue(
                                    issues,
                                    format!("{ip}.split-x"),
                                    format!("dam must sit inside the channel (got {x}, length {})", ch.length),
                                );
                            }
                        }
                    }
                }
                other => issue(
                    issues,
                    format!("{ip}.kind"),
                    format!("unknown initial state {other:?} (known: uniform, dam-break)"),
                ),
            }
            check_finite(issues, &format!("{ip}.u"), ch.initial.u);
        }
        for (j, junc) in self.junctions.iter().enumerate() {
            let p = format!("sw-network.junctions[{j}]");
            check_positive(issues, &format!("{p}.area"), junc.area);
            check_non_negative(issues, &format!("{p}.h0"), junc.h0);
            check_finite(issues, &format!("{p}.u0"), junc.u0);
            check_finite(issues, &format!("{p}.v0"), junc.v0);
            if junc.edges.is_empty() {
                issue(issues, format!("{p}.edges"), "a junction needs at least one edge");
            }
            for (e, edge) in junc.edges.iter().enumerate() {
                let ep = format!("{p}.edges[{e}]");
                check_positive(issues, &format!("{ep}.length"), edge.length);
                check_finite(issues, &format!("{ep}.angle-deg"), edge.angle_deg);
                let linked = edge.channel.is_some() || edge.end.is_some();
                if edge.wall && linked {
                    issue(
                        issues,
                        format!("{ep}.wall"),
                        "an edge is either a wall or a channel link, not both",
                    );
                }
                if !edge.wall && !linked {
                    issue(
                        issues,
                        format!("{ep}.channel"),
                        "edge needs either wall = true or a channel/end link",
                    );
                }
                if linked {
                    match edge.channel {
                        None => issue(issues, format!("{ep}.channel"), "required alongside end"),
                        Some(c) => {
                            if c >= self.channels.len() {
                                issue(
                                    issues,
                                    format!("{ep}.channel"),
                                    format!(
                                        "channel index {c} out of range ({} channels)",
                                        self.channels.len()
                                    ),
                                );
                            }
                        }
                    }
                    match edge.end.as_deref() {
                        None => issue(issues, format!("{ep}.end"), "required alongside channel"),
                        Some("left") | Some("right") => {}
                        Some(other) => issue(
                            issues,
                            format!("{ep}.end"),
                            format!("unknown channel end {other:?} (known: left, right)"),
                        ),
                    }
                }
            }
        }
        // If the per-field checks hold, assemble the actual network so the
        // linkage invariants (every junction end claimed exactly once,
        // polygon closure, angle consistency) are enforced here rather than
        // at run time.
        if issues.is_empty() {
            if let Err(e) = self.build_network() {
                issue(issues, "sw-network", e.to_string());
            }
        }
    }

    /// Builds the runnable network from a validated document.
    pub fn build_network(&self) -> mslab_core::Result<ChannelNetwork> {
        let mut net = ChannelNetwork::new(self.gravity, self.cfl)?;
        for ch in &self.channels {
            let channel = Channel::new(ch.length, ch.n_cells, ch.angle_deg, |x| {
                match ch.initial.kind.as_str() {
                    "uniform" => SwState1d::from_primitives(ch.initial.h.unwrap_or(0.0), ch.initial.u),
                    _ => {
                        let split = ch.initial.split_x.unwrap_or(0.0);
                        let h = if x <= split {
                            ch.initial.h_left.unwrap_or(0.0)
                        } else {
                            ch.initial.h_right.unwrap_or(0.0)
                        };
                        SwState1d::from_primitives(h, ch.initial.u)
                    }
                }
            })?;
            let bc = |name: &str| match name {
                "wall" => Some(BoundaryCondition::Wall),
                "transmissive" => Some(BoundaryCondition::Transmissive),
                _ => None,
            };
            net.add_channel(channel, bc(&ch.bc_left), bc(&ch.bc_right));
        }
        for junc in &self.junctions {
            let edges = junc
                .edges
                .iter()
                .map(|e| {
                    Ok(JunctionEdge {
                        length: e.length,
                        angle: mslab_core::RotationAngle::from_degrees(e.angle_deg)?,
                        link: if e.wall {
                            EdgeLink::Wall
                        } else {
                            EdgeLink::Channel {
                                channel: e.channel.expect("validated"),
                                end: match e.end.as_deref().expect("validated") {
                                    "left" => ChannelEnd::Left,
                                    _ => ChannelEnd::Right,
                                },
                            }
                        },
                    })
                })
                .collect::<mslab_core::Result<Vec<_>>>()?;
            let element = JunctionElement::new(junc.area, edges)?;
            net.add_junction(element, SwState2d::from_primitives(junc.h0, junc.u0, junc.v0));
        }
        net.validate()?;
        Ok(net)
    }
}

// ---------------------------------------------------------------------------
// Euler eigenstructure
// ---------------------------------------------------------------------------

/// One primitive gas state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct EulerStateDoc {
    /// Density \[kg/m³\].
    pub rho: f64,
    /// Velocity \[m/s\].
    pub velocity: f64,
    /// Pressure \[Pa\]; negative values demonstrate the loss of
    /// hyperbolicity.
    pub pressure: f64,
}

/// Characteristic analysis of the 1D compressible Euler equations at a list
/// of primitive states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct EulerEigenDoc {
    /// Adiabatic exponent `γ`.
    pub gamma: f64,
    pub states: Vec<EulerStateDoc>,
}

impl EulerEigenDoc {
    fn validate(&self, issues: &mut Vec<Issue>) {
        check_positive(issues, "euler-eigen.gamma", self.gamma);
        if self.states.is_empty() {
            issue(issues, "euler-eigen.states", "need at least one state");
        }
        for (i, s) in self.states.iter().enumerate() {
            let p = format!("euler-eigen.states[{i}]");
            check_positive(issues, &format!("{p}.rho"), s.rho);
            check_finite(issues, &format!("{p}.velocity"), s.velocity);
            check_finite(issues, &format!("{p}.pressure"), s.pressure);
        }
    }
}
