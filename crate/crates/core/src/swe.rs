//! Shallow-water channel networks with localized two-dimensional junctions.
//!
//! Channels are classical 1D finite-volume shallow-water solvers (Godunov
//! with an HLL flux). Junctions are single 2D polygonal elements: each edge
//! either couples to a channel end or is a wall. An edge flux is computed by
//! rotating the adjacent states into the frame of the edge's outward normal
//! (the rotational invariance `cosθ F + sinθ G = T⁻¹ F(T Q)` makes the 1D
//! solver sufficient), solving the rotated Riemann problem, and rotating the
//! flux back. The junction element then advances by its area-weighted flux
//! balance, and the coupled channel end consumes *the same* interface flux,
//! which makes the network exactly conservative.
//!
//! Rotation angles are specified in degrees with exact values at quadrant
//! multiples, so a straight-through junction (edges at 0° and 180°) rotates
//! by exact sign flips and the composite channel–junction–channel system
//! reproduces a single continuous channel to round-off.
//!
//! An exact shallow-water Riemann solver ([`ExactRiemann`]) is included as a
//! reference oracle for validating the HLL production path; it is not used
//! in the stepping loops.

use crate::{Error, Result};

/// Depth below which a cell counts as dry.
pub const H_DRY: f64 = 1e-8;

/// Default CFL number for network stepping.
pub const DEFAULT_CFL: f64 = 0.45;

// ---------------------------------------------------------------------------
// States.
// ---------------------------------------------------------------------------

/// Conserved pair `[h, hu]` of one 1D shallow-water cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwState1d {
    pub h: f64,
    pub hu: f64,
}

impl SwState1d {
    pub fn from_primitives(h: f64, u: f64) -> Self {
        SwState1d { h, hu: h * u }
    }

    /// Velocity, zero on dry cells.
    pub fn u(&self) -> f64 {
        if self.h > H_DRY {
            self.hu / self.h
        } else {
            0.0
        }
    }

    pub fn is_dry(&self) -> bool {
        self.h <= H_DRY
    }
}

/// Conserved triple `[h, hu, hv]` of a 2D shallow-water state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwState2d {
    pub h: f64,
    pub hu: f64,
    pub hv: f64,
}

impl SwState2d {
    pub fn from_primitives(h: f64, u: f64, v: f64) -> Self {
        SwState2d {
            h,
            hu: h * u,
            hv: h * v,
        }
    }

    pub fn u(&self) -> f64 {
        if self.h > H_DRY {
            self.hu / self.h
        } else {
            0.0
        }
    }

    pub fn v(&self) -> f64 {
        if self.h > H_DRY {
            self.hv / self.h
        } else {
            0.0
        }
    }
}

// ---------------------------------------------------------------------------
// Rotation.
// ---------------------------------------------------------------------------

/// A rotation angle with cached cosine/sine.
///
/// Built from degrees, the quadrant multiples 0°/90°/180°/270° carry exact
/// `±1/0` entries, so grid-aligned junction geometry introduces no rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationAngle {
    degrees: f64,
    radians: f64,
    cos: f64,
    sin: f64,
}

impl RotationAngle {
    /// Angle from degrees, reduced into `[0, 360)`.
    pub fn from_degrees(degrees: f64) -> Result<Self> {
        if !degrees.is_finite() {
            return Err(Error::invalid("degrees", degrees, "angle must be finite"));
        }
        let d = degrees.rem_euclid(360.0);
        let (cos, sin) = match d {
            0.0 => (1.0, 0.0),
            90.0 => (0.0, 1.0),
            180.0 => (-1.0, 0.0),
            270.0 => (0.0, -1.0),
            _ => (d.to_radians().cos(), d.to_radians().sin()),
        };
        Ok(RotationAngle {
            degrees: d,
            radians: d.to_radians(),
            cos,
            sin,
        })
    }

    /// Angle from radians (no quadrant snapping).
    pub fn from_radians(radians: f64) -> Result<Self> {
        if !radians.is_finite() {
            return Err(Error::invalid("radians", radians, "angle must be finite"));
        }
        Ok(RotationAngle {
            degrees: radians.to_degrees(),
            radians,
            cos: radians.cos(),
            sin: radians.sin(),
        })
    }

    pub fn degrees(&self) -> f64 {
        self.degrees
    }

    pub fn radians(&self) -> f64 {
        self.radians
    }

    pub fn cos(&self) -> f64 {
        self.cos
    }

    pub fn sin(&self) -> f64 {
        self.sin
    }
}

/// Applies `T(θ)` (or its inverse) to a 2D state: the depth is untouched,
/// the momentum rotates into (normal, tangential) components.
pub fn rotate_state(q: SwState2d, angle: &RotationAngle, inverse: bool) -> SwState2d {
    let (c, s) = (angle.cos, angle.sin);
    if inverse {
        SwState2d {
            h: q.h,
            hu: c * q.hu - s * q.hv,
            hv: s * q.hu + c * q.hv,
        }
    } else {
        SwState2d {
            h: q.h,
            hu: c * q.hu + s * q.hv,
            hv: -s * q.hu + c * q.hv,
        }
    }
}

// ---------------------------------------------------------------------------
// Fluxes.
// ---------------------------------------------------------------------------

/// Physical 1D flux `[hu, hu² + ½gh²]`; dry cells give the zero flux.
pub fn sw_flux_1d(q: SwState1d, g: f64) -> Result<[f64; 2]> {
    if q.h < -1e-12 {
        return Err(Error::invalid("h", q.h, "negative depth"));
    }
    if q.is_dry() {
        return Ok([0.0, 0.0]);
    }
    let u = q.hu / q.h;
    Ok([q.hu, q.hu * u + 0.5 * g * q.h * q.h])
}

/// Physical x-flux `F(Q)` of the 2D system.
pub fn sw_flux_2d_x(q: SwState2d, g: f64) -> [f64; 3] {
    if q.h <= H_DRY {
        return [0.0, 0.0, 0.0];
    }
    let u = q.hu / q.h;
    [q.hu, q.hu * u + 0.5 * g * q.h * q.h, q.hv * u]
}

/// Physical y-flux `G(Q)` of the 2D system.
pub fn sw_flux_2d_y(q: SwState2d, g: f64) -> [f64; 3] {
    if q.h <= H_DRY {
        return [0.0, 0.0, 0.0];
    }
    let v = q.hv / q.h;
    [q.hv, q.hu * v, q.hv * v + 0.5 * g * q.h * q.h]
}

/// Residual `‖cosθ F(Q) + sinθ G(Q) − T⁻¹F(T Q)‖∞` of the rotational
/// invariance identity; analytically zero for every state and angle.
pub fn rotational_invariance_check(q: SwState2d, angle: &RotationAngle, g: f64) -> f64 {
    let f = sw_flux_2d_x(q, g);
    let gf = sw_flux_2d_y(q, g);
    let rotated = rotate_state(q, angle, false);
    let f_rot = sw_flux_2d_x(rotated, g);
    let back = {
        let as_state = SwState2d {
            h: f_rot[0],
            hu: f_rot[1],
            hv: f_rot[2],
        };
        let b = rotate_state(as_state, angle, true);
        [b.h, b.hu, b.hv]
    };
    let mut res = 0.0f64;
    for k in 0..3 {
        let lhs = angle.cos * f[k] + angle.sin * gf[k];
        res = res.max((lhs - back[k]).abs());
    }
    res
}

// ---------------------------------------------------------------------------
// Riemann solvers.
// ---------------------------------------------------------------------------

/// HLL interface flux with two-rarefaction wave-speed estimates.
///
/// Star-region estimates `u* = ½(uL+uR) + aL − aR`,
/// `a* = ½(aL+aR) + ¼(uL−uR)` feed the bounds
/// `sL = min(uL − aL, u* − a*)`, `sR = max(uR + aR, u* + a*)`; dry sides
/// fall back to the wet side's rarefaction fan edges. Consistent:
/// `riemann_hll(q, q) = sw_flux_1d(q)`.
pub fn riemann_hll(ql: SwState1d, qr: SwState1d, g: f64) -> Result<[f64; 2]> {
    let fl = sw_flux_1d(ql, g)?;
    let fr = sw_flux_1d(qr, g)?;
    let (dry_l, dry_r) = (ql.is_dry(), qr.is_dry());
    if dry_l && dry_r {
        return Ok([0.0, 0.0]);
    }
    let (ul, ur) = (ql.u(), qr.u());
    let al = if dry_l { 0.0 } else { (g * ql.h).sqrt() };
    let ar = if dry_r { 0.0 } else { (g * qr.h).sqrt() };
    let (sl, sr) = if dry_r {
        // Right dry bed: left rarefaction head and dry front.
        (ul - al, ul + 2.0 * al)
    } else if dry_l {
        (ur - 2.0 * ar, ur + ar)
    } else {
        let u_star = 0.5 * (ul + ur) + al - ar;
        let a_star = 0.5 * (al + ar) + 0.25 * (ul - ur);
        (
            f64::min(ul - al, u_star - a_star),
            f64::max(ur + ar, u_star + a_star),
        )
    };
    if sl >= 0.0 {
        return Ok(fl);
    }
    if sr <= 0.0 {
        return Ok(fr);
    }
    let inv = 1.0 / (sr - sl);
    Ok([
        (sr * fl[0] - sl * fr[0] + sl * sr * (qr.h - ql.h)) * inv,
        (sr * fl[1] - sl * fr[1] + sl * sr * (qr.hu - ql.hu)) * inv,
    ])
}

/// Exact solution of the wet–wet shallow-water Riemann problem, used as a
/// validation oracle for the HLL path.
///
/// The star depth solves `f_L(h) + f_R(h) + (uR − uL) = 0` with the usual
/// two-branch depth functions (rarefaction below the side depth, shock
/// above), by Newton iteration started from the two-rarefaction estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactRiemann {
    pub hl: f64,
    pub ul: f64,
    pub hr: f64,
    pub ur: f64,
    pub g: f64,
    /// Star-region depth between the two waves.
    pub h_star: f64,
    /// Star-region velocity.
    pub u_star: f64,
}

impl ExactRiemann {
    pub fn solve(hl: f64, ul: f64, hr: f64, ur: f64, g: f64) -> Result<Self> {
        if !(hl > H_DRY && hr > H_DRY) {
            return Err(Error::invalid(
                "h",
                hl.min(hr),
                "exact solver requires wet states on both sides",
            ));
        }
        if !(g > 0.0) {
            return Err(Error::invalid("g", g, "gravity must be positive"));
        }
        let (al, ar) = ((g * hl).sqrt(), (g * hr).sqrt());
        if ur - ul >= 2.0 * (al + ar) {
            return Err(Error::invalid(
                "du",
                ur - ul,
                "states separate into a dry bed; no wet star region",
            ));
        }
        // Depth function and derivative for one side.
        let fk = |h: f64, hk: f64| -> (f64, f64) {
            if h > hk {
                let gk = (0.5 * g * (h + hk) / (h * hk)).sqrt();
                let f = (h - hk) * gk;
                let df = gk - g * (h - hk) / (4.0 * h * h * gk);
                (f, df)
            } else {
                ((g * h).sqrt() * 2.0 - 2.0 * (g * hk).sqrt(), (g / h).sqrt())
            }
        };
        // Two-rarefaction starting guess.
        let a_guess = (0.5 * (al + ar) + 0.25 * (ul - ur)).max(1e-12);
        let mut h = (a_guess * a_guess / g).max(1e-12);
        let mut converged = false;
        for _ in 0..100 {
            let (f_l, df_l) = fk(h, hl);
            let (f_r, df_r) = fk(h, hr);
            let f = f_l + f_r + (ur - ul);
            let df = df_l + df_r;
            let mut step = f / df;
            if !step.is_finite() {
                break;
            }
            if h - step <= 0.0 {
                step = 0.5 * h;
            }
            h -= step;
            if step.abs() <= 1e-14 * (1.0 + h) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence {
                context: "exact Riemann star depth",
                iterations: 100,
                residual: h,
            });
        }
        let (f_l, _) = fk(h, hl);
        let (f_r, _) = fk(h, hr);
        let u_star = 0.5 * (ul + ur) + 0.5 * (f_r - f_l);
        Ok(ExactRiemann {
            hl,
            ul,
            hr,
            ur,
            g,
            h_star: h,
            u_star,
        })
    }

    /// Samples the self-similar solution at `ξ = x/t`, returning `(h, u)`.
    pub fn sample(&self, xi: f64) -> (f64, f64) {
        let g = self.g;
        let (al, ar) = ((g * self.hl).sqrt(), (g * self.hr).sqrt());
        let a_star = (g * self.h_star).sqrt();
        if xi <= self.u_star {
            // Left wave.
            if self.h_star > self.hl {
                // Shock.
                let s = self.ul
                    - al * ((self.h_star * (self.h_star + self.hl)) / (2.0 * self.hl * self.hl))
                        .sqrt();
                if xi < s {
                    (self.hl, self.ul)
                } else {
                    (self.h_star, self.u_star)
                }
            } else {
                let head = self.ul - al;
                let tail = self.u_star - a_star;
                if xi < head {
                    (self.hl, self.ul)
                } else if xi > tail {
                    (self.h_star, self.u_star)
                } else {
                    let u = (self.ul + 2.0 * al + 2.0 * xi) / 3.0;
                    let a = (self.ul + 2.0 * al - xi) / 3.0;
                    (a * a / g, u)
                }
            }
        } else {
            // Right wave.
            if self.h_star > self.hr {
                let s = self.ur
                    + ar * ((self.h_star * (self.h_star + self.hr)) / (2.0 * self.hr * self.hr))
                        .sqrt();
                if xi > s {
                    (self.hr, self.ur)
                } else {
                    (self.h_star, self.u_star)
                }
            } else {
                let head = self.ur + ar;
                let tail = self.u_star + a_star;
                if xi > head {
                    (self.hr, self.ur)
                } else if xi < tail {
                    (self.h_star, self.u_star)
                } else {
                    let u = (self.ur - 2.0 * ar + 2.0 * xi) / 3.0;
                    let a = (-self.ur + 2.0 * ar + xi) / 3.0;
                    (a * a / g, u)
                }
            }
        }
    }

    /// Speed of the right-going front (shock speed for `h* > hR`, else the
    /// rarefaction head).
    pub fn right_front_speed(&self) -> f64 {
        let ar = (self.g * self.hr).sqrt();
        if self.h_star > self.hr {
            self.ur
                + ar * ((self.h_star * (self.h_star + self.hr)) / (2.0 * self.hr * self.hr)).sqrt()
        } else {
            self.ur + ar
        }
    }
}

// ---------------------------------------------------------------------------
// Channels.
// ---------------------------------------------------------------------------

/// Open-end boundary condition of a channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    /// Reflecting wall: mirror state with flipped velocity.
    Wall,
    /// Zero-gradient outflow.
    Transmissive,
}

/// One 1D channel: uniform cells of width 1 along an axis at a fixed angle.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    states: Vec<SwState1d>,
    dx: f64,
    angle: RotationAngle,
}

impl Channel {
    /// Builds a channel of `length` split into `n_cells`, its axis pointing
    /// along `angle_deg`, with cell states sampled at cell centers
    /// (`x ∈ (0, length)` measured from the left end).
    pub fn new(
        length: f64,
        n_cells: usize,
        angle_deg: f64,
        init: impl Fn(f64) -> SwState1d,
    ) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::invalid("length", length, "must be positive"));
        }
        if n_cells == 0 {
            return Err(Error::invalid("n_cells", 0.0, "need at least one cell"));
        }
        let dx = length / n_cells as f64;
        let states = (0..n_cells)
            .map(|i| init((i as f64 + 0.5) * dx))
            .collect::<Vec<_>>();
        for s in &states {
            if !(s.h.is_finite() && s.hu.is_finite()) || s.h < 0.0 {
                return Err(Error::invalid(
                    "h",
                    s.h,
                    "initial channel state must be finite with non-negative depth",
                ));
            }
        }
        Ok(Channel {
            states,
            dx,
            angle: RotationAngle::from_degrees(angle_deg)?,
        })
    }

    pub fn states(&self) -> &[SwState1d] {
        &self.states
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn n_cells(&self) -> usize {
        self.states.len()
    }

    pub fn angle(&self) -> &RotationAngle {
        &self.angle
    }

    /// Cell-center coordinates measured from the left end.
    pub fn cell_centers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.states.len()).map(move |i| (i as f64 + 0.5) * self.dx)
    }

    /// Largest stable step `dx / max(|u| + a)`; infinite if everything is dry.
    pub fn max_dt(&self, g: f64) -> f64 {
        let mut smax = 0.0f64;
        for q in &self.states {
            if !q.is_dry() {
                smax = smax.max(q.u().abs() + (g * q.h).sqrt());
            }
        }
        if smax > 0.0 {
            self.dx / smax
        } else {
            f64::INFINITY
        }
    }

    /// Total water volume `Σ h Δx` (unit width).
    pub fn mass(&self) -> f64 {
        self.states.iter().map(|q| q.h * self.dx).sum()
    }
}

/// Godunov step of a standalone channel with open ends.
///
/// Rejects `dt` beyond the CFL bound `dx / max(|u| + a)` (reported in the
/// error); mass is conserved exactly with wall ends.
pub fn step_channel(
    ch: &mut Channel,
    bc: (BoundaryCondition, BoundaryCondition),
    g: f64,
    dt: f64,
) -> Result<()> {
    let bound = ch.max_dt(g);
    if !(dt > 0.0) || dt > bound {
        return Err(Error::StepSizeUnstable {
            context: "step_channel",
            dt,
            bound,
        });
    }
    let n = ch.states.len();
    let ghost = |q: SwState1d, b: BoundaryCondition| -> SwState1d {
        match b {
            BoundaryCondition::Wall => SwState1d { h: q.h, hu: -q.hu },
            BoundaryCondition::Transmissive => q,
        }
    };
    let mut fluxes = Vec::with_capacity(n + 1);
    fluxes.push(riemann_hll(ghost(ch.states[0], bc.0), ch.states[0], g)?);
    for i in 1..n {
        fluxes.push(riemann_hll(ch.states[i - 1], ch.states[i], g)?);
    }
    fluxes.push(riemann_hll(ch.states[n - 1], ghost(ch.states[n - 1], bc.1), g)?);
    apply_channel_fluxes(ch, &fluxes, dt)?;
    Ok(())
}

fn apply_channel_fluxes(ch: &mut Channel, fluxes: &[[f64; 2]], dt: f64) -> Result<()> {
    let lam = dt / ch.dx;
    for (i, q) in ch.states.iter_mut().enumerate() {
        q.h -= lam * (fluxes[i + 1][0] - fluxes[i][0]);
        q.hu -= lam * (fluxes[i + 1][1] - fluxes[i][1]);
        if q.h < 0.0 {
            if q.h < -1e-9 {
                return Err(Error::invalid("h", q.h, "negative depth after update"));
            }
            q.h = 0.0;
            q.hu = 0.0;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Junctions and networks.
// ---------------------------------------------------------------------------

/// Which end of a channel an edge couples to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelEnd {
    Left,
    Right,
}

/// What sits on the far side of a junction edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeLink {
    Channel { channel: usize, end: ChannelEnd },
    Wall,
}

/// One edge of a junction polygon: length, outward-normal angle and link.
#[derive(Debug, Clone, PartialEq)]
pub struct JunctionEdge {
    pub length: f64,
    pub angle: RotationAngle,
    pub link: EdgeLink,
}

/// A single polygonal 2D element used as a junction.
#[derive(Debug, Clone, PartialEq)]
pub struct JunctionElement {
    pub area: f64,
    pub edges: Vec<JunctionEdge>,
}

impl JunctionElement {
    /// Validates positivity and the polygon closure
    /// `Σ length·(cosθ, sinθ) = 0`.
    pub fn new(area: f64, edges: Vec<JunctionEdge>) -> Result<Self> {
        if !(area.is_finite() && area > 0.0) {
            return Err(Error::invalid("area", area, "junction area must be positive"));
        }
        if edges.is_empty() {
            return Err(Error::Network {
                message: "junction needs at least one edge".to_string(),
            });
        }
        let mut total = 0.0;
        let (mut cx, mut cy) = (0.0, 0.0);
        for e in &edges {
            if !(e.length.is_finite() && e.length > 0.0) {
                return Err(Error::invalid("edge length", e.length, "must be positive"));
            }
            total += e.length;
            cx += e.length * e.angle.cos();
            cy += e.length * e.angle.sin();
        }
        if cx.abs() > 1e-12 * total || cy.abs() > 1e-12 * total {
            return Err(Error::Network {
                message: format!(
                    "junction edges do not close: Σ l·n = ({cx:.3e}, {cy:.3e})"
                ),
            });
        }
        Ok(JunctionElement { area, edges })
    }
}

/// A network of channels coupled through junction elements.
///
/// Each step is two-phase: all interface fluxes (channel faces and junction
/// edges) are computed against the frozen states, then every channel cell
/// and junction element is updated. A junction edge and its linked channel
/// end consume the same flux value, so the network mass
/// `Σ h Δx + Σ h_J · area` telescopes exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelNetwork {
    pub gravity: f64,
    pub cfl: f64,
    channels: Vec<ChannelSlot>,
    junctions: Vec<JunctionSlot>,
    validated: bool,
}

#[derive(Debug, Clone, PartialEq)]
struct ChannelSlot {
    channel: Channel,
    /// `None` while expecting a junction link.
    bc_left: Option<BoundaryCondition>,
    bc_right: Option<BoundaryCondition>,
}

#[derive(Debug, Clone, PartialEq)]
struct JunctionSlot {
    element: JunctionElement,
    state: SwState2d,
}

impl ChannelNetwork {
    pub fn new(gravity: f64, cfl: f64) -> Result<Self> {
        if !(gravity.is_finite() && gravity > 0.0) {
            return Err(Error::invalid("gravity", gravity, "must be positive"));
        }
        if !(cfl > 0.0 && cfl <= 1.0) {
            return Err(Error::invalid("cfl", cfl, "need 0 < cfl ≤ 1"));
        }
        Ok(ChannelNetwork {
            gravity,
            cfl,
            channels: Vec::new(),
            junctions: Vec::new(),
            validated: false,
        })
    }

    /// Adds a channel; ends with `None` must be linked to a junction edge.
    pub fn add_channel(
        &mut self,
        channel: Channel,
        bc_left: Option<BoundaryCondition>,
        bc_right: Option<BoundaryCondition>,
    ) -> usize {
        self.validated = false;
        self.channels.push(ChannelSlot {
            channel,
            bc_left,
            bc_right,
        });
        self.channels.len() - 1
    }

    /// Adds a junction element with its initial 2D state.
    pub fn add_junction(&mut self, element: JunctionElement, state: SwState2d) -> usize {
        self.validated = false;
        self.junctions.push(JunctionSlot { element, state });
        self.junctions.len() - 1
    }

    pub fn channel(&self, id: usize) -> &Channel {
        &self.channels[id].channel
    }

    pub fn junction_state(&self, id: usize) -> SwState2d {
        self.junctions[id].state
    }

    pub fn n_channels(&self) -> usize {
        self.channels.len()
    }

    /// Checks the linkage invariants: every `None` channel end is claimed by
    /// exactly one junction edge, no end is claimed twice or claimed while
    /// carrying an open boundary condition, and edge angles are consistent
    /// with the linked channel's axis (equal for left ends, opposite for
    /// right ends).
    pub fn validate(&mut self) -> Result<()> {
        let mut claims: Vec<(Option<(usize, usize)>, Option<(usize, usize)>)> =
            vec![(None, None); self.channels.len()];
        for (jid, j) in self.junctions.iter().enumerate() {
            for (eid, e) in j.element.edges.iter().enumerate() {
                if let EdgeLink::Channel { channel, end } = e.link {
                    if channel >= self.channels.len() {
                        return Err(Error::Network {
                            message: format!(
                                "junction {jid} edge {eid} links to unknown channel {channel}"
                            ),
                        });
                    }
                    let slot = &mut claims[channel];
                    let claim = match end {
                        ChannelEnd::Left => &mut slot.0,
                        ChannelEnd::Right => &mut slot.1,
                    };
                    if let Some((j0, e0)) = claim {
                        return Err(Error::Network {
                            message: format!(
                                "channel {channel} {end:?} end linked twice: junction {j0} edge {e0} and junction {jid} edge {eid}"
                            ),
                        });
                    }
                    *claim = Some((jid, eid));
                    // Outward normal must run along the channel axis (into
                    // the channel) for a left end, against it for a right end.
                    let axis = self.channels[channel].channel.angle.degrees();
                    let expected = match end {
                        ChannelEnd::Left => axis,
                        ChannelEnd::Right => (axis + 180.0).rem_euclid(360.0),
                    };
                    let diff = (e.angle.degrees() - expected).rem_euclid(360.0);
                    let diff = diff.min(360.0 - diff);
                    if diff > 1e-9 {
                        return Err(Error::Network {
                            message: format!(
                                "junction {jid} edge {eid}: outward angle {}° inconsistent with channel {channel} axis {axis}° ({end:?} end)",
                                e.angle.degrees()
                            ),
                        });
                    }
                }
            }
        }
        for (cid, (slot, claim)) in self.channels.iter().zip(&claims).enumerate() {
            if slot.bc_left.is_none() && claim.0.is_none() {
                return Err(Error::Network {
                    message: format!("channel {cid} left end has neither a boundary condition nor a junction link"),
                });
            }
            if slot.bc_left.is_some() && claim.0.is_some() {
                return Err(Error::Network {
                    message: format!("channel {cid} left end has both a boundary condition and a junction link"),
                });
            }
            if slot.bc_right.is_none() && claim.1.is_none() {
                return Err(Error::Network {
                    message: format!("channel {cid} right end has neither a boundary condition nor a junction link"),
                });
            }
            if slot.bc_right.is_some() && claim.1.is_some() {
                return Err(Error::Network {
                    message: format!("channel {cid} right end has both a boundary condition and a junction link"),
                });
            }
        }
        self.validated = true;
        Ok(())
    }

    /// Largest stable step over all channels and junction elements.
    pub fn max_dt(&self) -> f64 {
        let mut dt = f64::INFINITY;
        for slot in &self.channels {
            dt = dt.min(slot.channel.max_dt(self.gravity));
        }
        for j in &self.junctions {
            let q = &j.state;
            if q.h > H_DRY {
                let smax = (q.u().powi(2) + q.v().powi(2)).sqrt() + (self.gravity * q.h).sqrt();
                let max_edge = j
                    .element
                    .edges
                    .iter()
                    .map(|e| e.length)
                    .fold(0.0f64, f64::max);
                if smax > 0.0 {
                    dt = dt.min(j.element.area / max_edge / smax);
                }
            }
        }
        dt
    }

    /// Advances the whole network by one CFL-limited step; returns `dt`.
    pub fn step(&mut self) -> Result<f64> {
        if !self.validated {
            self.validate()?;
        }
        let dt = self.cfl * self.max_dt();
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::Network {
                message: "network has no wet cells to advance".to_string(),
            });
        }
        self.step_with_dt(dt)?;
        Ok(dt)
    }

    /// Advances by a caller-chosen `dt` (must respect the CFL bound).
    pub fn step_with_dt(&mut self, dt: f64) -> Result<()> {
        if !self.validated {
            self.validate()?;
        }
        let bound = self.max_dt();
        if !(dt > 0.0) || dt > bound {
            return Err(Error::StepSizeUnstable {
                context: "network step",
                dt,
                bound,
            });
        }
        let g = self.gravity;

        // Phase 1a: junction edge fluxes in edge frames, plus the flux each
        // linked channel end will consume (in its own axis frame).
        struct EdgeFlux {
            f_mass: f64,
            f_norm: f64,
            f_tan: f64,
        }
        let mut junction_fluxes: Vec<Vec<EdgeFlux>> = Vec::with_capacity(self.junctions.len());
        let mut end_fluxes: Vec<(Option<[f64; 2]>, Option<[f64; 2]>)> =
            vec![(None, None); self.channels.len()];
        for j in &self.junctions {
            let qj = j.state;
            let mut per_edge = Vec::with_capacity(j.element.edges.len());
            for e in &j.element.edges {
                let hat_j = rotate_state(qj, &e.angle, false);
                let (hat_n, tan_vel_n) = match e.link {
                    EdgeLink::Wall => {
                        let mirrored = SwState2d {
                            h: hat_j.h,
                            hu: -hat_j.hu,
                            hv: hat_j.hv,
                        };
                        (mirrored, hat_j.v())
                    }
                    EdgeLink::Channel { channel, end } => {
                        let ch = &self.channels[channel].channel;
                        let q1 = match end {
                            ChannelEnd::Left => ch.states[0],
                            ChannelEnd::Right => ch.states[ch.states.len() - 1],
                        };
                        // Embed along the channel axis (transversal velocity
                        // dropped), then rotate into the edge frame.
                        let q2 = SwState2d {
                            h: q1.h,
                            hu: q1.hu * ch.angle.cos(),
                            hv: q1.hu * ch.angle.sin(),
                        };
                        let hat = rotate_state(q2, &e.angle, false);
                        let tv = hat.v();
                        (hat, tv)
                    }
                };
                let f = riemann_hll(
                    SwState1d {
                        h: hat_j.h,
                        hu: hat_j.hu,
                    },
                    SwState1d {
                        h: hat_n.h,
                        hu: hat_n.hu,
                    },
                    g,
                )?;
                let tan_up = if f[0] > 0.0 {
                    hat_j.v()
                } else if f[0] < 0.0 {
                    tan_vel_n
                } else {
                    0.5 * (hat_j.v() + tan_vel_n)
                };
                let flux = EdgeFlux {
                    f_mass: f[0],
                    f_norm: f[1],
                    f_tan: f[0] * tan_up,
                };
                if let EdgeLink::Channel { channel, end } = e.link {
                    // The channel face flux along its own axis: identical to
                    // the edge flux at a left end (edge normal = axis), and
                    // mirrored mass at a right end (edge normal = −axis).
                    let face = match end {
                        ChannelEnd::Left => [flux.f_mass, flux.f_norm],
                        ChannelEnd::Right => [-flux.f_mass, flux.f_norm],
                    };
                    match end {
                        ChannelEnd::Left => end_fluxes[channel].0 = Some(face),
                        ChannelEnd::Right => end_fluxes[channel].1 = Some(face),
                    }
                }
                per_edge.push(flux);
            }
            junction_fluxes.push(per_edge);
        }

        // Phase 1b: channel face fluxes.
        let mut channel_fluxes: Vec<Vec<[f64; 2]>> = Vec::with_capacity(self.channels.len());
        for (cid, slot) in self.channels.iter().enumerate() {
            let ch = &slot.channel;
            let n = ch.states.len();
            let mut fluxes = Vec::with_capacity(n + 1);
            let left = match (slot.bc_left, end_fluxes[cid].0) {
                (Some(bc), None) => {
                    let ghost = match bc {
                        BoundaryCondition::Wall => SwState1d {
                            h: ch.states[0].h,
                            hu: -ch.states[0].hu,
                        },
                        BoundaryCondition::Transmissive => ch.states[0],
                    };
                    riemann_hll(ghost, ch.states[0], g)?
                }
                (None, Some(face)) => face,
                _ => unreachable!("validated linkage"),
            };
            fluxes.push(left);
            for i in 1..n {
                fluxes.push(riemann_hll(ch.states[i - 1], ch.states[i], g)?);
            }
            let right = match (slot.bc_right, end_fluxes[cid].1) {
                (Some(bc), None) => {
                    let ghost = match bc {
                        BoundaryCondition::Wall => SwState1d {
                            h: ch.states[n - 1].h,
                            hu: -ch.states[n - 1].hu,
                        },
                        BoundaryCondition::Transmissive => ch.states[n - 1],
                    };
                    riemann_hll(ch.states[n - 1], ghost, g)?
                }
                (None, Some(face)) => face,
                _ => unreachable!("validated linkage"),
            };
            fluxes.push(right);
            channel_fluxes.push(fluxes);
        }

        // Phase 2: apply.
        for (slot, fluxes) in self.channels.iter_mut().zip(&channel_fluxes) {
            apply_channel_fluxes(&mut slot.channel, fluxes, dt)?;
        }
        for (j, per_edge) in self.junctions.iter_mut().zip(&junction_fluxes) {
            let inv_a = dt / j.element.area;
            for (e, f) in j.element.edges.iter().zip(per_edge) {
                let back = rotate_state(
                    SwState2d {
                        h: f.f_mass,
                        hu: f.f_norm,
                        hv: f.f_tan,
                    },
                    &e.angle,
                    true,
                );
                j.state.h -= inv_a * e.length * back.h;
                j.state.hu -= inv_a * e.length * back.hu;
                j.state.hv -= inv_a * e.length * back.hv;
            }
            if j.state.h < 0.0 {
                if j.state.h < -1e-9 {
                    return Err(Error::invalid("h", j.state.h, "negative junction depth"));
                }
                j.state = SwState2d {
                    h: 0.0,
                    hu: 0.0,
                    hv: 0.0,
                };
            }
        }
        Ok(())
    }

    /// Runs `n` CFL-limited steps; returns the reached time increment.
    pub fn advance(&mut self, n: usize) -> Result<f64> {
        let mut t = 0.0;
        for _ in 0..n {
            t += self.step()?;
        }
        Ok(t)
    }

    /// Steps until `t_end` (the final step is shortened to land exactly).
    pub fn advance_to(&mut self, t_end: f64) -> Result<usize> {
        if !(t_end > 0.0) {
            return Err(Error::invalid("t_end", t_end, "must be positive"));
        }
        let mut t = 0.0;
        let mut steps = 0;
        while t < t_end {
            let dt = (self.cfl * self.max_dt()).min(t_end - t);
            if !dt.is_finite() || dt <= 0.0 {
                return Err(Error::Network {
                    message: "network stalled before reaching t_end".to_string(),
                });
            }
            self.step_with_dt(dt)?;
            t += dt;
            steps += 1;
        }
        Ok(steps)
    }
}

/// Total water volume in the network: channel cells (unit width) plus
/// junction elements.
pub fn network_mass(net: &ChannelNetwork) -> f64 {
    let mut mass = 0.0;
    for slot in &net.channels {
        mass += slot.channel.mass();
    }
    for j in &net.junctions {
        mass += j.state.h * j.element.area;
    }
    mass
}

/// Maps a junction's 2D velocity onto a channel's scalar velocity: the
/// magnitude of the 2D vector signed by the existing 1D velocity, with the
/// sign of the normal component as tie-break when the 1D velocity is zero.
pub fn channel_velocity_from_2d(u2d: f64, v2d: f64, u1d_prev: f64) -> f64 {
    let mag = (u2d * u2d + v2d * v2d).sqrt();
    let sign = if u1d_prev != 0.0 {
        u1d_prev.signum()
    } else if u2d != 0.0 {
        u2d.signum()
    } else {
        return 0.0;
    };
    sign * mag
}
