use torelli_web::{branch_text, grid_html, hull_report, MAX_GRID};

#[test]
fn orthogonal_grid_has_sharp_column_boundary() {
    let html = grid_html("so", 8, 5, 0, 1).unwrap();
    let rows: Vec<&str> = html.split("<tr>").skip(2).collect();
    for (i, row) in rows.iter().enumerate() {
        let d = i + 1;
        let yes = row.matches("class=\"yes\"").count();
        assert_eq!(yes, if d >= 6 { 5 } else { 0 }, "row d={d}");
    }
}

#[test]
fn grid_bounds() {
    assert!(grid_html("su", MAX_GRID, MAX_GRID, 1, 1).is_ok());
    assert!(grid_html("su", MAX_GRID + 1, 1, 1, 1).is_err());
    assert!(grid_html("xx", 1, 1, 1, 1).is_err());
}

#[test]
fn spin_and_hull_round_trip() {
    assert_eq!(branch_text("spin", 9, 0, "full").unwrap(), "Std x8  (dimension 16)");
    let r = hull_report("# semistable\n2 1\n4 2\n").unwrap();
    assert!(r.contains("semistable: true"));
    assert!(r.contains("mu_f: 1/2"));
}
