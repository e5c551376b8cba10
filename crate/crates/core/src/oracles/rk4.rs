use num_complex::Complex64;

/// Classical fourth-order Runge-Kutta stepper with its own scratch buffers.
pub(crate) struct Rk4 {
    k1: Vec<Complex64>,
    k2: Vec<Complex64>,
    k3: Vec<Complex64>,
    k4: Vec<Complex64>,
    tmp: Vec<Complex64>,
}

impl Rk4 {
    pub(crate) fn new(len: usize) -> Self {
        let zero = vec![Complex64::new(0.0, 0.0); len];
        Self {
            k1: zero.clone(),
            k2: zero.clone(),
            k3: zero.clone(),
            k4: zero.clone(),
            tmp: zero,
        }
    }

    pub(crate) fn step<F>(&mut self, y: &mut [Complex64], dt: f64, mut rhs: F)
    where
        F: FnMut(&[Complex64], &mut [Complex64]),
    {
        rhs(y, &mut self.k1);
        for ((t, &y), &k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k1) {
            *t = y + k * (0.5 * dt);
        }
        rhs(&self.tmp, &mut self.k2);
        for ((t, &y), &k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k2) {
            *t = y + k * (0.5 * dt);
        }
        rhs(&self.tmp, &mut self.k3);
        for ((t, &y), &k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k3) {
            *t = y + k * dt;
        }
        rhs(&self.tmp, &mut self.k4);
        let w = dt / 6.0;
        for (i, y) in y.iter_mut().enumerate() {
            *y += (self.k1[i] + (self.k2[i] + self.k3[i]) * 2.0 + self.k4[i]) * w;
        }
    }
}
