use pyo3::prelude::*;
use pyo3::types::PyModule;

fn with_module<F: FnOnce(&Bound<'_, PyModule>)>(f: F) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "pylissajous").unwrap();
        pylissajous::pylissajous(&m).unwrap();
        f(&m);
    });
}

#[test]
fn classify_returns_a_report_dict() {
    with_module(|m| {
        let report = m.getattr("classify").unwrap().call1((4, -5)).unwrap();
        let level: u32 = report.get_item("level").unwrap().extract().unwrap();
        let frieze: String = report.get_item("friezeW").unwrap().extract().unwrap();
        let matrix: Vec<Vec<i64>> = report.get_item("matrix").unwrap().extract().unwrap();
        assert_eq!(level, 2);
        assert_eq!(frieze, "dbdpqp");
        assert_eq!(matrix, vec![vec![10, 3], vec![3, 1]]);
    });
}

#[test]
fn labels_round_trip() {
    with_module(|m| {
        let t: (i64, i64) = m
            .getattr("type_of")
            .unwrap()
            .call1((1u32, "2/3"))
            .unwrap()
            .extract()
            .unwrap();
        assert_eq!(t, (-11, 16));
        let ls: (u32, String) = m
            .getattr("level_slope")
            .unwrap()
            .call1(t)
            .unwrap()
            .extract()
            .unwrap();
        assert_eq!(ls, (1, "2/3".to_string()));
    });
}

#[test]
fn errors_become_python_exceptions() {
    with_module(|m| {
        let e = m.getattr("classify").unwrap().call1((3, 2)).unwrap_err();
        assert!(e.to_string().contains("divisible by 3"));
        let e = m
            .getattr("from_label")
            .unwrap()
            .call1((1u32, "1/2"))
            .unwrap_err();
        assert!(e.to_string().contains("label"));
    });
}

#[test]
fn frieze_words_multiply() {
    with_module(|m| {
        let h = m.getattr("frieze_h").unwrap().call1((-11, 16)).unwrap();
        let tail = h.call_method0("second_half").unwrap();
        let w = h.call_method1("__mul__", (tail,)).unwrap();
        assert_eq!(w.str().unwrap().to_string(), "bqpqbqpqbqbdbqbdbq");
        let mat: Vec<Vec<i64>> = w.call_method0("matrix").unwrap().extract().unwrap();
        assert_eq!(mat, vec![vec![586, -741], vec![-741, 937]]);
    });
}
