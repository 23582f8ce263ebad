use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(krein_csym_py::py_module)(py);
        let globals = PyDict::new(py);
        globals.set_item("kc", module).unwrap();
        let src = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&src, Some(&globals), None) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn classify_and_spectrum_from_python() {
    with_module(
        r#"
import math
p = kc.ExtParams(0.0, math.pi / 4)
assert kc.classify(p)["stable"]
t = math.tan(math.pi / 8)
expect = [-0.25 / t**2, -0.25 * t**2]
rep = kc.closed_form_eigenvalues(p)
assert all(abs(a - b) < 1e-14 for a, b in zip(rep["values"], expect)), rep
solved = kc.find_discrete_spectrum(p, interval=(-10.0, 0.0))
assert all(abs(a - b) < 1e-10 for a, b in zip(solved["values"], expect))
via_expr = kc.find_discrete_spectrum(p, interval=(-10.0, 0.0), expr="2*i*sqrt(mu)")
assert all(abs(a - b) < 1e-10 for a, b in zip(via_expr["values"], expect))
ups = kc.closed_form_eigenvalues(kc.ExtParams(0.0, math.pi / 2))
assert ups["eigenvalues"][0][1] == 2 and ups["eigenvalues"][0][2] == "both"
"#,
    );
}

#[test]
fn matrices_and_errors_from_python() {
    with_module(
        r#"
c = kc.build_c(0.7, 1.3)
sq = [[sum(c[i][k] * c[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
assert all(abs(sq[i][j] - (1 if i == j else 0)) < 1e-12 for i in range(2) for j in range(2))
k = kc.build_k(kc.ExtParams(0.2, 0.4, 1.0, 2.0))
assert abs(k[0][0] * k[1][1] - k[0][1] * k[1][0] + complex(__import__("cmath").exp(-2j))) < 1e-12
try:
    kc.closed_form_eigenvalues(kc.ExtParams(1.0, 1.0471975512))
    raise SystemExit("expected ArithmeticError")
except ArithmeticError as e:
    assert "tanh" in str(e)
try:
    kc.ExtParams(float("nan"), 0.0)
    raise SystemExit("expected ValueError")
except ValueError:
    pass
assert kc.kernel_gram_min_eig([1j, 1 + 2j]) >= -1e-10
assert abs(abs(kc.cayley_theta(-3.0)) - 1.0) < 1e-15
"#,
    );
}

#[test]
fn oracle_and_probe_from_python() {
    with_module(
        r#"
import math
rep = kc.oracle_scan(kc.ExtParams(0.0, math.pi / 4), n=2000)
assert len(rep["roots"]) == 2
roots = kc.nonreal_spectrum_probe(kc.ExtParams(1.0, math.pi / 3))
assert len(roots) == 2 and all(abs(z.imag) > 1e-6 for z in roots)
"#,
    );
}
