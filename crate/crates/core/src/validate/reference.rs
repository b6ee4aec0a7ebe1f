//! Published reference errors for the `conv3d` case, degrees 1 to 5 on
//! 101, 201, 401 and 801 equispaced samples.

/// Sample counts of the reference meshes.
pub const POINTS: [usize; 4] = [101, 201, 401, 801];

/// `ERRORS[N-1][mesh][axis] = [L1, L2, Linf]`.
#[rustfmt::skip]
pub const ERRORS: [[[[f64; 3]; 3]; 4]; 5] = [
    [
        [[1.89e-3, 1.49e-3, 1.64e-3], [5.06e-3, 4.00e-3, 4.60e-3], [7.74e-3, 6.24e-3, 7.62e-3]],
        [[4.73e-4, 3.72e-4, 4.11e-4], [1.27e-3, 1.00e-3, 1.15e-3], [1.94e-3, 1.56e-3, 1.91e-3]],
        [[1.18e-4, 9.31e-5, 1.03e-4], [3.16e-4, 2.50e-4, 2.88e-4], [4.84e-4, 3.90e-4, 4.77e-4]],
        [[2.95e-5, 2.33e-5, 2.57e-5], [7.91e-5, 6.25e-5, 7.20e-5], [1.21e-4, 9.75e-5, 1.19e-4]],
    ],
    [
        [[2.80e-4, 2.49e-4, 6.16e-4], [4.86e-4, 4.14e-4, 5.91e-4], [1.11e-3, 9.49e-4, 1.38e-3]],
        [[3.43e-5, 3.02e-5, 8.16e-5], [5.96e-5, 5.13e-5, 7.39e-5], [1.35e-4, 1.16e-4, 1.72e-4]],
        [[4.23e-6, 3.69e-6, 1.03e-5], [7.42e-6, 6.41e-6, 9.24e-6], [1.68e-5, 1.45e-5, 2.15e-5]],
        [[5.25e-7, 4.55e-7, 1.30e-6], [9.27e-7, 8.01e-7, 1.15e-6], [2.09e-6, 1.81e-6, 2.69e-6]],
    ],
    [
        [[7.66e-5, 6.60e-5, 1.04e-4], [9.05e-5, 8.24e-5, 2.27e-4], [2.99e-4, 2.69e-4, 6.88e-4]],
        [[4.68e-6, 4.01e-6, 4.94e-6], [5.61e-6, 5.00e-6, 1.50e-5], [1.88e-5, 1.68e-5, 4.94e-5]],
        [[2.90e-7, 2.50e-7, 3.10e-7], [3.47e-7, 3.05e-7, 9.51e-7], [1.17e-6, 1.03e-6, 3.19e-6]],
        [[1.81e-8, 1.56e-8, 1.94e-8], [2.16e-8, 1.88e-8, 5.96e-8], [7.29e-8, 6.34e-8, 2.01e-7]],
    ],
    [
        [[1.18e-5, 1.17e-5, 4.77e-5], [9.72e-6, 8.65e-6, 2.74e-5], [5.11e-5, 4.89e-5, 1.88e-4]],
        [[3.68e-7, 3.67e-7, 1.98e-6], [2.76e-7, 2.36e-7, 4.66e-7], [1.42e-6, 1.23e-6, 3.31e-6]],
        [[1.11e-8, 1.06e-8, 6.60e-8], [8.40e-9, 7.21e-9, 9.98e-9], [4.27e-8, 3.66e-8, 5.48e-8]],
        [[3.38e-10, 3.09e-10, 2.09e-9], [2.61e-10, 2.25e-10, 3.12e-10], [1.32e-9, 1.14e-9, 1.57e-9]],
    ],
    [
        [[3.90e-6, 3.91e-6, 1.71e-5], [1.92e-6, 1.98e-6, 9.03e-6], [1.35e-5, 1.29e-5, 4.73e-5]],
        [[5.63e-8, 4.93e-8, 1.57e-7], [2.99e-8, 2.99e-8, 1.70e-7], [2.24e-7, 2.20e-7, 1.19e-6]],
        [[8.54e-10, 7.33e-10, 1.27e-9], [4.58e-10, 4.32e-10, 2.77e-9], [3.47e-9, 3.26e-9, 2.07e-8]],
        [[1.32e-11, 1.14e-11, 1.49e-11], [7.05e-12, 6.39e-12, 4.39e-11], [5.36e-11, 4.85e-11, 3.31e-10]],
    ],
];

/// Printed orders: `ORDERS[N-1][mesh-1][axis] = [L1, L2, Linf]`.
#[rustfmt::skip]
pub const ORDERS: [[[[f64; 3]; 3]; 3]; 5] = [
    [
        [[2.00, 2.00, 2.00], [2.00, 2.00, 2.00], [2.00, 2.00, 2.00]],
        [[2.00, 2.00, 2.00], [2.00, 2.00, 2.00], [2.00, 2.00, 2.00]],
        [[2.00, 2.00, 2.00], [2.00, 2.00, 2.00], [2.00, 2.00, 2.00]],
    ],
    [
        [[3.03, 3.04, 2.92], [3.03, 3.01, 3.00], [3.04, 3.03, 3.00]],
        [[3.02, 3.03, 2.98], [3.01, 3.00, 3.00], [3.01, 3.01, 3.00]],
        [[3.01, 3.02, 2.99], [3.00, 3.00, 3.00], [3.00, 3.00, 3.00]],
    ],
    [
        [[4.03, 4.04, 4.39], [4.01, 4.04, 3.92], [3.99, 4.00, 3.80]],
        [[4.01, 4.00, 3.99], [4.01, 4.04, 3.98], [4.01, 4.03, 3.95]],
        [[4.00, 4.00, 4.00], [4.01, 4.02, 4.00], [4.01, 4.02, 3.99]],
    ],
    [
        [[5.01, 4.99, 4.59], [5.14, 5.20, 5.88], [5.17, 5.32, 5.83]],
        [[5.05, 5.12, 4.91], [5.04, 5.03, 5.55], [5.06, 5.07, 5.92]],
        [[5.04, 5.10, 4.98], [5.01, 5.00, 5.00], [5.01, 5.01, 5.12]],
    ],
    [
        [[6.12, 6.31, 6.77], [6.01, 6.05, 5.73], [5.91, 5.87, 5.31]],
        [[6.04, 6.07, 6.94], [6.03, 6.11, 5.94], [6.02, 6.07, 5.85]],
        [[6.01, 6.01, 6.42], [6.02, 6.08, 5.98], [6.02, 6.07, 5.97]],
    ],
];

/// Reference errors for `degree` on `points` samples, if tabulated.
pub fn errors(degree: usize, points: usize) -> Option<&'static [[f64; 3]; 3]> {
    let mesh = POINTS.iter().position(|&p| p == points)?;
    ERRORS.get(degree.checked_sub(1)?).map(|d| &d[mesh])
}

/// Printed orders for `degree` on `points` samples (not defined for the
/// coarsest mesh).
pub fn orders(degree: usize, points: usize) -> Option<&'static [[f64; 3]; 3]> {
    let mesh = POINTS.iter().position(|&p| p == points)?.checked_sub(1)?;
    ORDERS.get(degree.checked_sub(1)?).map(|d| &d[mesh])
}
