//! The torus picture: `n` open `s×k` rectangles centred at `(i, π(i))` on the
//! `n×n` torus.
//!
//! All geometry is done in doubled integer coordinates on `Z_{2n}`, where
//! rectangle edges land on integers for every parity of `s` and `k`. A
//! half-lattice point `(u/2, v/2)` lies inside rectangle `i` iff the doubled
//! cyclic distances satisfy `|u − 2i| < s` and `|v − 2π(i)| < k`. If some
//! positive-area region is covered `r+1` times, its intersection contains a
//! half-lattice point, so the maximum count over the grid is the maximum
//! coverage of the torus.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{param_err, Result};
use crate::ring::Permutation;

/// Interior-coverage counts at the `2n×2n` half-lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageGrid {
    n: usize,
    counts: Vec<u32>,
}

impl CoverageGrid {
    pub const RESOLUTION: usize = 2;

    pub fn modulus(&self) -> usize {
        self.n
    }

    /// Grid side length, `2n`.
    pub fn side(&self) -> usize {
        2 * self.n
    }

    /// Number of rectangles whose interior contains `(u/2, v/2)`.
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.counts[v * self.side() + u]
    }

    pub fn max(&self) -> u32 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// Points `(u, v)` covered more than `r` times, row-major.
    pub fn over(&self, r: usize) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let side = self.side();
        self.counts
            .iter()
            .enumerate()
            .filter(move |&(_, &c)| c as usize > r)
            .map(move |(idx, &c)| (idx % side, idx / side, c))
    }
}

fn check_dims(perm: &Permutation, s: usize, k: usize) -> Result<()> {
    let n = perm.n();
    if s == 0 || k == 0 || s > n || k > n {
        return Err(param_err!(
            "rectangle sides must lie in [1, {n}], got {s}x{k}"
        ));
    }
    Ok(())
}

/// Counts, at every half-lattice point, how many rectangle interiors contain it.
pub fn coverage_counts(perm: &Permutation, s: usize, k: usize) -> Result<CoverageGrid> {
    check_dims(perm, s, k)?;
    let n = perm.n();
    let side = 2 * n;
    let mut counts = vec![0u32; side * side];
    // Offsets strictly inside the half-widths; since s, k ≤ n these never
    // wrap onto themselves.
    for (i, &pi) in perm.as_slice().iter().enumerate() {
        for dv in 1 - k as isize..k as isize {
            let v = (2 * pi as isize + dv).rem_euclid(side as isize) as usize;
            let row = &mut counts[v * side..(v + 1) * side];
            for du in 1 - s as isize..s as isize {
                let u = (2 * i as isize + du).rem_euclid(side as isize) as usize;
                row[u] += 1;
            }
        }
    }
    Ok(CoverageGrid { n, counts })
}

/// Drawing options for [`render_svg`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SvgOptions {
    /// Side of one unit cell in pixels.
    pub cell_px: u32,
    pub grid: bool,
    /// Shade half-lattice points covered more than `threshold` times.
    pub heatmap: bool,
    pub threshold: usize,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            cell_px: 20,
            grid: true,
            heatmap: false,
            threshold: 1,
        }
    }
}

/// A cyclic interval `[lo, lo + len)` on `Z_m` split into at most two
/// pieces inside `[0, m)`.
pub(crate) fn split_wrapped(lo: isize, len: usize, m: usize) -> ([(usize, usize); 2], usize) {
    let start = lo.rem_euclid(m as isize) as usize;
    if start + len <= m {
        ([(start, len), (0, 0)], 1)
    } else {
        let first = m - start;
        ([(start, first), (0, len - first)], 2)
    }
}

/// Pixel coordinate of `halves` half-pixels.
struct Px(u64);

impl core::fmt::Display for Px {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

// Counts r+1 and r+2 or more.
const HEAT: [&str; 2] = ["#f4a582", "#b2182b"];

/// Renders the torus picture as a standalone SVG 1.1 document.
///
/// Column `i` holds the centre of rectangle `i` at the middle of its unit
/// cell; rows are drawn bottom-up so `π(i)` grows upward. Each rectangle is
/// a `<g class="tile">` of one to four `<rect>` fragments clipped at the torus
/// edges. Output depends only on the inputs.
pub fn render_svg(perm: &Permutation, s: usize, k: usize, opts: &SvgOptions) -> Result<String> {
    check_dims(perm, s, k)?;
    if opts.cell_px == 0 {
        return Err(param_err!("cell size must be positive"));
    }
    let n = perm.n();
    let side = 2 * n;
    // One doubled unit is half a cell: cell_px half-pixels.
    let unit = opts.cell_px as u64;
    let px = |doubled: usize| Px(doubled as u64 * unit);
    // SVG y grows downward.
    let py = |doubled: usize| Px((side - doubled) as u64 * unit);
    let size = Px(side as u64 * unit);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(out, "<desc>{s}x{k} rectangles on a {n}x{n} torus</desc>");
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>"#
    );

    let _ = writeln!(
        out,
        r##"<g class="tiles" fill="#bfbfbf" fill-opacity="0.5" stroke="black" stroke-width="1">"##
    );
    for (i, &pi) in perm.as_slice().iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<g class="tile" data-index="{i}" data-value="{pi}">"#
        );
        let (xs, nx) = split_wrapped(2 * i as isize + 1 - s as isize, 2 * s, side);
        let (ys, ny) = split_wrapped(2 * pi as isize + 1 - k as isize, 2 * k, side);
        for &(y0, h) in &ys[..ny] {
            for &(x0, w) in &xs[..nx] {
                let _ = writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
                    px(x0),
                    py(y0 + h),
                    px(w),
                    px(h)
                );
            }
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</g>");

    if opts.heatmap {
        let grid = coverage_counts(perm, s, k)?;
        let _ = writeln!(out, r#"<g class="heatmap" stroke="none">"#);
        // Point (u, v) sits at (u + 1, v + 1) doubled units in drawing
        // coordinates, since centres are drawn mid-cell.
        for (u, v, c) in grid.over(opts.threshold) {
            let level = (c as usize - opts.threshold - 1).min(HEAT.len() - 1);
            let _ = writeln!(
                out,
                r#"<circle class="hot" data-count="{c}" cx="{}" cy="{}" r="{}" fill="{}"/>"#,
                px((u + 1) % side),
                py((v + 1) % side),
                Px(unit / 2),
                HEAT[level]
            );
        }
        let _ = writeln!(out, "</g>");
    }

    if opts.grid {
        let _ = writeln!(
            out,
            r#"<g class="grid" stroke="gray" stroke-width="0.5" stroke-dasharray="1,2">"#
        );
        for c in 1..n {
            let at = px(2 * c);
            let _ = writeln!(out, r#"<line x1="{at}" y1="0" x2="{at}" y2="{size}"/>"#);
            let _ = writeln!(out, r#"<line x1="0" y1="{at}" x2="{size}" y2="{at}"/>"#);
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(
        out,
        r#"<rect class="border" x="0" y="0" width="{size}" height="{size}" fill="none" stroke="black" stroke-width="1"/>"#
    );
    let _ = writeln!(out, "</svg>");
    Ok(out)
}
