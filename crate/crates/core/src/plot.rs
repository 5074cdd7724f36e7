//! SVG rendering of credal sets over three outcomes in a barycentric triangle.
//!
//! Corner `r` sits at the top, `g` bottom left and `b` bottom right. A
//! distribution `(p_r, p_g, p_b)` maps to the plane point
//! `(p_b − p_g, H · p_r)` with `H = 1351/780`, a rational just above `√3`, and
//! then to the SVG canvas by `X = 200 + 150x`, `Y = 320 − 150y`. Everything up
//! to the final six-decimal rounding is exact.

use std::cmp::Ordering;
use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::credal::CredalSet;
use crate::error::{Error, Result};
use crate::finstoch::ProbVector;
use crate::scalar::Scalar;
use crate::Rational;

/// Triangle height: an exact rational approximation of `√3`.
pub fn height() -> Rational {
    Rational::from_ratio(1351, 780)
}

/// Exact canvas coordinates of a distribution over three outcomes.
pub fn canvas_point(p: &ProbVector<Rational>) -> Result<(Rational, Rational)> {
    if p.dim() != 3 {
        return Err(Error::Dimension(format!("only three outcomes can be plotted, got {}", p.dim())));
    }
    let x = p.get(2) - p.get(1);
    let y = height() * p.get(0);
    let scale = Rational::from_ratio(150, 1);
    Ok((
        Rational::from_ratio(200, 1) + scale.clone() * x,
        Rational::from_ratio(320, 1) - scale * y,
    ))
}

/// Decimal rendering with six digits after the point, rounding half away from zero.
pub fn fixed6(q: &Rational) -> String {
    let scaled = q * Rational::from_ratio(1_000_000, 1);
    let (quot, rem) = scaled.numer().abs().div_rem(scaled.denom());
    let twice: BigInt = rem * 2;
    let magnitude = if twice >= *scaled.denom() { quot + 1 } else { quot };
    let digits = format!("{:0>7}", magnitude.to_string());
    let (int, frac) = digits.split_at(digits.len() - 6);
    let sign = if scaled.is_negative() && !magnitude.is_zero() { "-" } else { "" };
    format!("{sign}{int}.{frac}")
}

/// Orders points counter-clockwise (in plane coordinates) around their centroid.
fn sort_by_angle(points: &mut [(Rational, Rational)]) {
    let n = Rational::from_usize(points.len());
    let cx = points.iter().fold(Rational::zero(), |acc, p| acc + p.0.clone()) / n.clone();
    let cy = points.iter().fold(Rational::zero(), |acc, p| acc + p.1.clone()) / n;
    // Canvas Y grows downwards; flip it so that "counter-clockwise" has its usual meaning.
    let rel = |p: &(Rational, Rational)| (p.0.clone() - cx.clone(), cy.clone() - p.1.clone());
    let half = |(x, y): &(Rational, Rational)| u8::from(y.is_negative() || (y.is_zero() && x.is_negative()));
    points.sort_by(|a, b| {
        let (a, b) = (rel(a), rel(b));
        half(&a).cmp(&half(&b)).then_with(|| {
            let cross = a.0.clone() * b.1.clone() - a.1.clone() * b.0.clone();
            match cross.cmp(&Rational::zero()) {
                Ordering::Greater => Ordering::Less,
                Ordering::Less => Ordering::Greater,
                Ordering::Equal => Ordering::Equal,
            }
        })
    });
}

fn points_attr(points: &[(Rational, Rational)]) -> String {
    points
        .iter()
        .map(|(x, y)| format!("{},{}", fixed6(x), fixed6(y)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canvas vertices of the credal polygon in drawing order.
pub fn polygon_vertices(set: &CredalSet<Rational>) -> Result<Vec<(Rational, Rational)>> {
    let mut points = set.extremes().iter().map(canvas_point).collect::<Result<Vec<_>>>()?;
    sort_by_angle(&mut points);
    Ok(points)
}

/// Renders the simplex with labelled corners and the credal set on top: a
/// dot for a single distribution, otherwise a polygon through the extreme
/// points.
pub fn render_svg(set: &CredalSet<Rational>) -> Result<String> {
    let vertices = polygon_vertices(set)?;
    let corners: Vec<(Rational, Rational)> = (0..3)
        .map(|i| canvas_point(&ProbVector::dirac(i, 3).expect("three outcomes")))
        .collect::<Result<_>>()?;
    let mut svg = String::new();
    let w = &mut svg;
    writeln!(w, r#"<svg xmlns="http://www.w3.org/2000/svg" width="400" height="360" viewBox="0 0 400 360">"#).unwrap();
    writeln!(
        w,
        r#"  <polygon class="simplex" points="{}" fill="none" stroke="black" stroke-width="1"/>"#,
        points_attr(&corners)
    )
    .unwrap();
    let labels = [("r", "red", 0, -10), ("g", "green", -16, 14), ("b", "blue", 8, 14)];
    for ((name, colour, dx, dy), (x, y)) in labels.iter().zip(&corners) {
        let x = x + Rational::from_ratio(*dx, 1);
        let y = y + Rational::from_ratio(*dy, 1);
        writeln!(
            w,
            r#"  <text x="{}" y="{}" fill="{colour}" font-family="sans-serif" font-size="16">{name}</text>"#,
            fixed6(&x),
            fixed6(&y)
        )
        .unwrap();
    }
    if let [(x, y)] = vertices.as_slice() {
        writeln!(
            w,
            r#"  <circle class="credal" cx="{}" cy="{}" r="4" fill="steelblue"/>"#,
            fixed6(x),
            fixed6(y)
        )
        .unwrap();
    } else {
        writeln!(
            w,
            r#"  <polygon class="credal" points="{}" fill="steelblue" fill-opacity="0.5" stroke="steelblue" stroke-width="2"/>"#,
            points_attr(&vertices)
        )
        .unwrap();
    }
    writeln!(w, "</svg>").unwrap();
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn rounding() {
        assert_eq!(fixed6(&q(1, 3)), "0.333333");
        assert_eq!(fixed6(&q(2, 3)), "0.666667");
        assert_eq!(fixed6(&q(1, 2_000_000)), "0.000001");
        assert_eq!(fixed6(&q(-1, 2_000_000)), "-0.000001");
        assert_eq!(fixed6(&q(-1, 3_000_000)), "0.000000");
        assert_eq!(fixed6(&q(350, 1)), "350.000000");
    }

    #[test]
    fn corners() {
        let r = canvas_point(&ProbVector::dirac(0, 3).unwrap()).unwrap();
        assert_eq!((fixed6(&r.0), fixed6(&r.1)), ("200.000000".into(), "60.192308".into()));
        let g = canvas_point(&ProbVector::dirac(1, 3).unwrap()).unwrap();
        assert_eq!(g, (q(50, 1), q(320, 1)));
        let b = canvas_point(&ProbVector::dirac(2, 3).unwrap()).unwrap();
        assert_eq!(b, (q(350, 1), q(320, 1)));
    }

    #[test]
    fn singleton_is_a_dot_and_simplex_is_the_triangle() {
        let dot = render_svg(&CredalSet::singleton(ProbVector::uniform(3).unwrap())).unwrap();
        assert!(dot.contains(r#"<circle class="credal" cx="200.000000""#));
        let tri = render_svg(&CredalSet::simplex(3).unwrap()).unwrap();
        assert!(tri.contains(r#"<polygon class="credal" points="200.000000,60.192308 50.000000,320.000000 350.000000,320.000000""#));
    }

    #[test]
    fn rejects_other_dimensions() {
        assert!(render_svg(&CredalSet::simplex(2).unwrap()).is_err());
    }
}
