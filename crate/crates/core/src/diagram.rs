//! Circle-diagram rendering: a unit circle with the orbit points labeled by
//! their numerators over `k^q - 1`, the fixed points of `m_k` in blue, and
//! an arrow chord from each point to its image.
//!
//! Output is a plain SVG string; identical inputs produce byte-identical
//! output (no timestamps, no randomness).

use num_traits::ToPrimitive;

use crate::realization::Orbit;

const SIZE: f64 = 640.0;
const CENTER: f64 = 320.0;
const RADIUS: f64 = 250.0;
const LABEL_RADIUS: f64 = 285.0;

/// Position on the circle for an angle given as a fraction of a full turn,
/// measured counterclockwise from the positive x-axis.
fn position(turn: f64, radius: f64) -> (f64, f64) {
    let theta = std::f64::consts::TAU * turn;
    (CENTER + radius * theta.cos(), CENTER - radius * theta.sin())
}

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

/// Renders the orbit as an SVG circle diagram.
pub fn render_orbit_svg(orbit: &Orbit) -> String {
    let k = orbit.k();
    let sigma = orbit.classify();
    let (numerators, denominator) = orbit.numerators();
    let turns: Vec<f64> = orbit
        .points()
        .iter()
        .map(|x| x.to_f64().expect("orbit point fits in f64"))
        .collect();

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" \
         viewBox=\"0 0 {s} {s}\">\n",
        s = SIZE as u32
    ));
    svg.push_str(
        "  <defs>\n    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" \
         markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\">\n      \
         <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#888888\"/>\n    </marker>\n  </defs>\n",
    );
    svg.push_str(&format!(
        "  <rect width=\"{s}\" height=\"{s}\" fill=\"white\"/>\n",
        s = SIZE as u32
    ));
    svg.push_str(&format!(
        "  <circle cx=\"{c}\" cy=\"{c}\" r=\"{r}\" fill=\"none\" stroke=\"black\" \
         stroke-width=\"1.5\"/>\n",
        c = fmt(CENTER),
        r = fmt(RADIUS)
    ));

    // Arrows x_i -> x_{σ(i)}, drawn first so dots sit on top.
    for (t, &turn) in turns.iter().enumerate() {
        let image = sigma.apply(t + 1) - 1;
        let (x1, y1) = position(turn, RADIUS);
        let (x2, y2) = position(turns[image], RADIUS);
        // Pull the arrowhead slightly off the target dot.
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt().max(1.0);
        let (x2, y2) = (x2 - 12.0 * dx / len, y2 - 12.0 * dy / len);
        svg.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#888888\" \
             stroke-width=\"1\" marker-end=\"url(#arrow)\"/>\n",
            fmt(x1),
            fmt(y1),
            fmt(x2),
            fmt(y2)
        ));
    }

    // Fixed points of m_k at j/(k-1), shown in blue.
    for j in 0..k - 1 {
        let (x, y) = position(j as f64 / (k - 1) as f64, RADIUS);
        svg.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"#1f4fbf\"/>\n",
            fmt(x),
            fmt(y)
        ));
    }

    // Orbit points with numerator labels in multiples of 1/(k^q - 1).
    for (t, &turn) in turns.iter().enumerate() {
        let (x, y) = position(turn, RADIUS);
        svg.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#c03020\"/>\n",
            fmt(x),
            fmt(y)
        ));
        let (lx, ly) = position(turn, LABEL_RADIUS);
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"15\" \
             text-anchor=\"middle\" dominant-baseline=\"middle\">{}</text>\n",
            fmt(lx),
            fmt(ly),
            numerators[t]
        ));
    }

    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{} under m_{} (angles in multiples of 1/{})</text>\n",
        fmt(CENTER),
        fmt(SIZE - 14.0),
        sigma,
        k,
        denominator
    ));
    svg.push_str("</svg>\n");
    svg
}
