//! Browser bindings: each entry point takes a configuration JSON string and
//! returns plot data as a JSON string.

pub mod api;

#[cfg(target_arch = "wasm32")]
mod bindings {
    use wasm_bindgen::prelude::*;

    fn js(r: Result<String, String>) -> Result<String, JsError> {
        r.map_err(|e| JsError::new(&e))
    }

    #[wasm_bindgen]
    pub fn dispersion_curve(config: &str, lo_um: f64, hi_um: f64, points: usize) -> Result<String, JsError> {
        js(crate::api::dispersion_curve(config, lo_um, hi_um, points))
    }

    #[wasm_bindgen]
    pub fn joint_spectrum(config: &str, points: usize) -> Result<String, JsError> {
        js(crate::api::joint_spectrum(config, points))
    }

    #[wasm_bindgen]
    pub fn phasematch_contour(config: &str, lo_um: f64, hi_um: f64, points: usize) -> Result<String, JsError> {
        js(crate::api::phasematch_contour(config, lo_um, hi_um, points))
    }
}
