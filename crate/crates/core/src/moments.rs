/// First, second and selected fourth moments of a two-mode field with real
/// expectation values.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModeMoments {
    /// `<a>`
    pub mean_a: f64,
    /// `<b>`
    pub mean_b: f64,
    /// `<a^+ a>`
    pub n_a: f64,
    /// `<b^+ b>`
    pub n_b: f64,
    /// `<a b>`
    pub ab: f64,
    /// `<a^+ b>`
    pub a_dag_b: f64,
    /// `<a^2>`
    pub a_sq: f64,
    /// `<b^2>`
    pub b_sq: f64,
    /// `<a^+2 a^2>`
    pub a_dag2_a2: f64,
    /// `<a^+ b^+ a b>`
    pub a_dag_b_dag_ab: f64,
}

impl ModeMoments {
    /// Second moments of the fluctuation operators `a - <a>`, `b - <b>`.
    /// Fourth-order entries are left at zero.
    pub fn fluctuations(&self) -> ModeMoments {
        ModeMoments {
            mean_a: 0.0,
            mean_b: 0.0,
            n_a: self.n_a - self.mean_a * self.mean_a,
            n_b: self.n_b - self.mean_b * self.mean_b,
            ab: self.ab - self.mean_a * self.mean_b,
            a_dag_b: self.a_dag_b - self.mean_a * self.mean_b,
            a_sq: self.a_sq - self.mean_a * self.mean_a,
            b_sq: self.b_sq - self.mean_b * self.mean_b,
            a_dag2_a2: 0.0,
            a_dag_b_dag_ab: 0.0,
        }
    }
}
