//! Gauss–Legendre quadrature on `[0, 1]`.

#[allow(clippy::excessive_precision)]
pub(crate) const GL8: [(f64, f64); 4] = [
    (0.96028985649753623168, 0.10122853629037625915),
    (0.79666647741362673959, 0.22238103445337447054),
    (0.52553240991632898582, 0.31370664587788728734),
    (0.18343464249564980494, 0.36268378337836198297),
];
#[allow(clippy::excessive_precision)]
pub(crate) const GL16: [(f64, f64); 8] = [
    (0.98940093499164993260, 0.027152459411754094852),
    (0.94457502307323257608, 0.062253523938647892863),
    (0.86563120238783174388, 0.095158511682492784810),
    (0.75540440835500303390, 0.12462897125553387205),
    (0.61787624440264374845, 0.14959598881657673208),
    (0.45801677765722738634, 0.16915651939500253819),
    (0.28160355077925891323, 0.18260341504492358887),
    (0.095012509837637440185, 0.18945061045506849629),
];
#[allow(clippy::excessive_precision)]
pub(crate) const GL32: [(f64, f64); 16] = [
    (0.99726386184948156354, 0.0070186100094700966004),
    (0.98561151154526833540, 0.016274394730905670605),
    (0.96476225558750643077, 0.025392065309262059456),
    (0.93490607593773968917, 0.034273862913021433103),
    (0.89632115576605212397, 0.042835898022226680657),
    (0.84936761373256997013, 0.050998059262376176196),
    (0.79448379596794240696, 0.058684093478535547145),
    (0.73218211874028968039, 0.065822222776361846838),
    (0.66304426693021520098, 0.072345794108848506225),
    (0.58771575724076232904, 0.078193895787070306472),
    (0.50689990893222939002, 0.083311924226946755222),
    (0.42135127613063534536, 0.087652093004403811143),
    (0.33186860228212764978, 0.091173878695763884713),
    (0.23928736225213707454, 0.093844399080804565639),
    (0.14447196158279649349, 0.095638720079274859419),
    (0.048307665687738316235, 0.096540088514727800567),
];

/// Nodes and weights on `[−1, 1]` by Newton iteration on `P_n`
/// (positive half, as in the tables).
fn newton_half(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n / 2 + 1);
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Nodes and weights on `[0, 1]`, in increasing node order.
pub fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    let half: Vec<(f64, f64)> = match n {
        8 => GL8.to_vec(),
        16 => GL16.to_vec(),
        32 => GL32.to_vec(),
        _ => newton_half(n),
    };
    let mut pts = Vec::with_capacity(n);
    for &(x, w) in &half {
        if x.abs() < 1e-12 {
            pts.push((0.5, 0.5 * w));
        } else {
            pts.push((0.5 * (1.0 - x), 0.5 * w));
            pts.push((0.5 * (1.0 + x), 0.5 * w));
        }
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_one() {
        for n in [2, 3, 5, 8, 16, 32, 33] {
            let g = gauss_legendre_unit(n);
            assert_eq!(g.len(), n);
            let s: f64 = g.iter().map(|p| p.1).sum();
            assert!((s - 1.0).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn polynomial_exactness() {
        for n in [4, 8, 16, 32] {
            let g = gauss_legendre_unit(n);
            for deg in 0..2 * n {
                let q: f64 = g.iter().map(|(x, w)| w * x.powi(deg as i32)).sum();
                assert!((q - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "n = {n}, deg = {deg}");
            }
        }
    }

    #[test]
    fn tables_match_newton() {
        for (n, t) in [(8, GL8.to_vec()), (16, GL16.to_vec()), (32, GL32.to_vec())] {
            let nw = newton_half(n);
            for (a, b) in t.iter().zip(&nw) {
                assert!((a.0 - b.0).abs() < 1e-14 && (a.1 - b.1).abs() < 1e-14);
            }
        }
    }
}
