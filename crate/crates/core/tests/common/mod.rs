//! Independent reference implementations the integration suites compare
//! against. Deliberately naive: quadratic transforms and literal formula
//! evaluation, no shared code with the library paths under test.

use cube_spectra::PointTable;

/// O(4^n) transform straight from the definition of a Fourier coefficient.
pub fn naive_analyze(table: &PointTable) -> Vec<f64> {
    let n = table.n();
    let size = 1usize << n;
    (0..size as u64)
        .map(|mask| {
            let mut sum = 0.0;
            for b in 0..size as u64 {
                let sign = if (mask & b).count_ones() % 2 == 1 {
                    -1.0
                } else {
                    1.0
                };
                sum += sign * table.value(b);
            }
            sum / size as f64
        })
        .collect()
}

/// Point-domain convolution (f*g)(x) = E_z[g(z) f(x xor z)]; xor is the
/// coordinatewise product in mask form.
pub fn point_convolution(f: &PointTable, g: &PointTable) -> Vec<f64> {
    assert_eq!(f.n(), g.n());
    let size = f.len() as u64;
    (0..size)
        .map(|x| {
            let mut sum = 0.0;
            for z in 0..size {
                sum += g.value(z) * f.value(x ^ z);
            }
            sum / size as f64
        })
        .collect()
}
