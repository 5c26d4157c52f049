use gqfi::{
    correlation_report_with, is_entangled, make_sts, EntanglementThreshold, MeasureOptions, Result,
    StsParams,
};

use crate::format::format_number;
use crate::table::Table;

/// Diagnostics for one squeezed thermal state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateReport {
    pub n_thermal: f64,
    pub m: f64,
    pub q2: f64,
    pub p2: f64,
    pub argmin: [f64; 3],
    pub nu_tilde: f64,
    pub log_neg: f64,
    pub purity: f64,
    pub qcr_low: f64,
    pub qcr_high: f64,
    pub threshold: f64,
    pub entangled: bool,
}

pub fn state_report(
    n_thermal: f64,
    m: f64,
    threshold: EntanglementThreshold,
    opts: &MeasureOptions,
) -> Result<StateReport> {
    let state = make_sts(StsParams::new(n_thermal, m)?)?;
    let r = correlation_report_with(&state, opts)?;
    let d = r.argmin_direction;
    Ok(StateReport {
        n_thermal,
        m,
        q2: r.q2,
        p2: r.p2,
        argmin: [d.x(), d.y(), d.z()],
        nu_tilde: r.nu_tilde,
        log_neg: r.log_neg,
        purity: r.purity,
        qcr_low: r.qcr_low,
        qcr_high: r.qcr_high,
        threshold: threshold.value(),
        entangled: is_entangled(&state, threshold)?,
    })
}

impl StateReport {
    fn fields(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("N", self.n_thermal),
            ("m", self.m),
            ("q2", self.q2),
            ("p2", self.p2),
            ("argmin_x", self.argmin[0]),
            ("argmin_y", self.argmin[1]),
            ("argmin_z", self.argmin[2]),
            ("nu_tilde", self.nu_tilde),
            ("logneg", self.log_neg),
            ("purity", self.purity),
            ("qcr_low", self.qcr_low),
            ("qcr_high", self.qcr_high),
            ("threshold", self.threshold),
            ("entangled", if self.entangled { 1.0 } else { 0.0 }),
        ]
    }

    pub fn to_text(&self) -> String {
        let fields = self.fields();
        let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (key, value) in fields {
            let shown = if key == "entangled" {
                self.entangled.to_string()
            } else {
                format_number(value)
            };
            out.push_str(&format!("{key:<width$}  {shown}\n"));
        }
        out
    }

    pub fn to_table(&self) -> Table {
        let fields = self.fields();
        let mut t = Table::new(fields.iter().map(|(k, _)| *k).collect());
        t.rows.push(fields.iter().map(|(_, v)| *v).collect());
        t
    }
}
