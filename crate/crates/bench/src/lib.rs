//! Fixtures shared by the benchmarks in `benches/`.

use parafermion::{FockVector, ModuleId, StateName, TwistedModule};

/// Twisted module over `V(k, i)` together with `eta` and `W3`.
pub fn twisted_fixture(k: u32, i: u32, simple: bool) -> (TwistedModule, FockVector, FockVector) {
    let ctx = ModuleId::new(k, i).expect("valid module");
    let mut m = if simple {
        TwistedModule::new(ctx)
    } else {
        TwistedModule::verma(ctx)
    };
    let eta = m.eta();
    let w3 = m.state(StateName::W3).expect("W3 builds");
    (m, eta, w3)
}
