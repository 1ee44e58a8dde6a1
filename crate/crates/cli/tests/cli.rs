use std::fs;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("flexsky").chain(args.iter().copied());
    let code = flexsky_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn report(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn ids(v: &Value) -> Vec<String> {
    v["result"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["id"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn laptop_skyline() {
    let r = report(&["sky"]);
    assert_eq!(ids(&r), ["Dell", "Apple", "Lenovo"]);
    assert_eq!(r["count"], 3);
    assert_eq!(r["result"][0]["values"], serde_json::json!([1500.0, 90.0]));
}

#[test]
fn unconstrained_nd_is_skyline() {
    assert_eq!(ids(&report(&["nd", "--algo", "SVE1F"])), ["Dell", "Apple", "Lenovo"]);
    assert_eq!(ids(&report(&["nd", "--algo", "ulp2", "--parallel", "3"])), ["Dell", "Apple", "Lenovo"]);
}

#[test]
fn price_heavy_nd_and_po() {
    let nd = ids(&report(&["nd", "--constraint", "1,0 >= 0.8"]));
    assert_eq!(nd, ["Dell"]);
    let po = ids(&report(&["po", "--algo", "POPI1", "--constraint", "1,0 >= 0.8"]));
    assert_eq!(po, ["Dell"]);
}

#[test]
fn topk_by_price() {
    let r = report(&["topk", "-k", "1", "--weights", "1,0"]);
    assert_eq!(ids(&r), ["Dell"]);
    assert_eq!(r["result"][0]["score"], 0.0);
    let r = report(&["topk", "-k", "2", "--weights", "0,1"]);
    assert_eq!(ids(&r), ["Lenovo", "Apple"]);
}

#[test]
fn eps_skyline_two_tuples() {
    let r = report(&["eps-sky", "--epsilon", "0.25"]);
    assert_eq!(ids(&r), ["Apple", "Lenovo"]);
    let r = report(&["eps-sky", "--epsilon", "0", "--strict-exists", "true"]);
    assert_eq!(r["count"], 3);
}

#[test]
fn fa_and_ta_agree() {
    for agg in ["min", "avg"] {
        let fa = report(&["fa", "-k", "2", "--aggregation", agg]);
        let ta = report(&["ta", "-k", "2", "--aggregation", agg]);
        assert_eq!(ids(&fa), ids(&ta), "{agg}");
        assert!(ta["counters"]["halt_depth"].as_u64().unwrap() <= fa["counters"]["halt_depth"].as_u64().unwrap());
    }
    let w = report(&["ta", "--weights", "1,0"]);
    assert_eq!(ids(&w), ["Dell"]);
}

#[test]
fn po_within_nd_on_generated_data() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("g.csv");
    let (code, _, err) = run(&["gen", "-n", "150", "-d", "3", "--distribution", "anti", "--seed", "5", "-o", data.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let d = data.to_str().unwrap();
    let c = "0.5,-1,0.2 <= 0.3";
    let nd = ids(&report(&["nd", "--dataset", d, "--constraint", c]));
    let po = ids(&report(&["po", "--dataset", d, "--constraint", c]));
    let po_par = ids(&report(&["po", "--dataset", d, "--constraint", c, "--parallel", "4"]));
    assert!(!po.is_empty());
    assert!(po.iter().all(|t| nd.contains(t)));
    assert_eq!(po, po_par);
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "-n", "5", "-d", "2", "--seed", "42"]);
    let b = run(&["gen", "-n", "5", "-d", "2", "--seed", "42"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    assert_eq!(a.1.lines().next(), Some("id,a1,a2"));
    assert_eq!(a.1.lines().count(), 6);
    let one = run(&["gen", "-n", "1", "-d", "4", "--distribution", "correlated"]);
    assert_eq!(one.1.lines().count(), 2);
    assert_eq!(run(&["gen", "-n", "0", "-d", "2"]).0, 2);
    assert_eq!(run(&["gen", "-n", "3", "-d", "2", "--distribution", "zipf"]).0, 2);
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("laptops.csv"), flexsky_cli::LAPTOPS_CSV).unwrap();
    let cfg = dir.path().join("q.conf");
    fs::write(
        &cfg,
        "# price matters most\n\
         dataset = laptops.csv\n\
         schema = price:min, cpu:min\n\
         constraint = 1,0 >= 0.8\n\
         algo = SLP2\n",
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let r = report(&["nd", "--config", c]);
    assert_eq!(ids(&r), ["Dell"]);
    assert_eq!(r["algorithm"], "SLP2");
    let r = report(&["nd", "--config", c, "--algo", "UVE2"]);
    assert_eq!(r["algorithm"], "UVE2");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(run(&["sky", "--config", cfg.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["nd", "--algo", "SVE9"]).0, 2);
    assert_eq!(run(&["nd", "--constraint", "1,0 <= -1"]).0, 2);
    assert_eq!(run(&["topk"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["sky", "--dataset", "/no/such/file.csv"]).0, 3);

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "id,x,y\na,1,2\nb,oops,3\n").unwrap();
    let (code, _, err) = run(&["sky", "--dataset", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("row 2"), "{err}");

    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("plot-data"));
}

#[test]
fn bench_tables() {
    let (code, out, err) = run(&["bench", "--n", "200", "--d", "3", "--c", "1", "--trials", "2"]);
    assert_eq!(code, 0, "{err}");
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r[5] == rows[0][5]));

    let (_, out, _) = run(&["bench", "--op", "po", "--n", "80", "--c", "2", "--trials", "1"]);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r[5] == rows[0][5]));

    let (_, out, _) = run(&["bench", "--algos", "SVE1F", "--n", "50", "--trials", "1"]);
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn plot_data_subsets() {
    let (code, out, _) = run(&["plot-data", "--strict-exists", "true"]);
    assert_eq!(code, 0);
    let set = |name: &str| -> Vec<String> {
        out.lines()
            .filter(|l| l.starts_with(&format!("{name},")))
            .map(|l| l.split(',').nth(1).unwrap().to_string())
            .collect()
    };
    let (all, sky, eps) = (set("all"), set("sky"), set("eps_sky"));
    assert_eq!((all.len(), sky.len(), eps.len()), (5, 3, 2));
    assert!(sky.iter().all(|t| all.contains(t)));
    assert!(eps.iter().all(|t| sky.contains(t)));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plot.csv");
    let r = report(&["plot-data", "-o", path.to_str().unwrap()]);
    assert_eq!(r["sets"]["sky"], 3);
    assert!(fs::read_to_string(&path).unwrap().starts_with("set,id,price,cpu\n"));
}
