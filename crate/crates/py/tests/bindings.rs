use pyo3::ffi::c_str;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyqmetric::pyqmetric as module;

fn with_module(code: &std::ffi::CStr) {
    pyo3::append_to_inittab!(module);
    Python::initialize();
    Python::attach(|py| {
        let globals = PyDict::new(py);
        globals.set_item("qm", py.import("pyqmetric").unwrap()).unwrap();
        py.run(code, Some(&globals), None).unwrap();
    });
}

#[test]
fn python_surface() {
    with_module(c_str!(
        r#"
m = qm.metric_for_matrix([[2, 1j], [1j, -1]])
assert m.positive_definite and m.gram < 1e-12 and m.intertwining < 1e-12, m
assert len(m.q) == 2 and abs(m.q[0][1] - m.q[1][0].conjugate()) < 1e-14

t = qm.two_by_two(1.0, 2.0, 1.5, 0.7, 0.3)
assert t.branch == "real"
m2 = qm.metric_for_matrix(t.h)
assert m2.positive_definite and m2.gram < 1e-12

assert qm.oscillator_metric_is_identity(12)

s = qm.perturbative_series(3)
assert s.order == 3 and s.energies[1] == "0" and "11/8" in s.energies[2]
assert s.cross_validate(60, 10) < 1e-8
assert abs(s.energy(0, 0.1) - 0.01 * 11 / 8) < 1e-15

try:
    qm.metric_for_matrix([[0, 1], [0, 0]])
    raise SystemExit("expected failure")
except ArithmeticError as e:
    assert "DegenerateSpectrum" in str(e)

try:
    qm.perturbative_series(2, "x ^")
    raise SystemExit("expected failure")
except ValueError as e:
    assert "ParseError" in str(e)

import json
rep = json.loads(qm.run_job(json.dumps({"schema": 1, "mode": "model", "model": {"name": "harmonic_oscillator", "params": {"nMax": 4}}})))
assert rep["status"] == "pass"
"#
    ));
}
