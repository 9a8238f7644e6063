//! Wall-clock access that degrades to "no clock" on wasm32, where
//! `std::time::Instant` is unavailable.

#[cfg(not(target_arch = "wasm32"))]
#[derive(Clone, Copy, Debug)]
pub struct Timer(std::time::Instant);

#[cfg(not(target_arch = "wasm32"))]
impl Timer {
    pub fn start() -> Self {
        Timer(std::time::Instant::now())
    }

    pub fn elapsed_secs(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

#[cfg(target_arch = "wasm32")]
#[derive(Clone, Copy, Debug)]
pub struct Timer;

#[cfg(target_arch = "wasm32")]
impl Timer {
    pub fn start() -> Self {
        Timer
    }

    pub fn elapsed_secs(&self) -> f64 {
        0.0
    }
}

impl Timer {
    pub fn elapsed_ms(&self) -> u64 {
        (self.elapsed_secs() * 1000.0) as u64
    }
}
