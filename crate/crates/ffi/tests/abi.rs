use std::ffi::{CStr, CString};
use std::ptr;

use pivotgrowth_ffi::*;

fn matrix(rows: usize, cols: usize, data: &[f64]) -> *mut PgMatrix {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { pg_matrix_new(rows, cols, data.as_ptr(), &mut m) }, PG_OK);
    m
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(pg_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn matrix_round_trip() {
    let data = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
    let m = matrix(2, 3, &data);
    unsafe {
        assert_eq!((pg_matrix_rows(m), pg_matrix_cols(m)), (2, 3));
        let mut buf = [0.0; 6];
        assert_eq!(pg_matrix_copy(m, buf.as_mut_ptr(), 6), PG_OK);
        assert_eq!(buf, data);
        assert_eq!(pg_matrix_copy(m, buf.as_mut_ptr(), 5), PG_BUFFER_TOO_SMALL);
        pg_matrix_free(m);
    }
}

#[test]
fn wilkinson_growth_through_the_abi() {
    let name = CString::new("wilkinsonA").unwrap();
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(pg_model(name.as_ptr(), 6, &mut m), PG_OK);
        let mut rho = 0.0;
        assert_eq!(pg_growth_factor(m, PG_PIVOT_PARTIAL, &mut rho), PG_OK);
        assert_eq!(rho, 32.0);

        let mut rep = PgGrowthReport::default();
        assert_eq!(pg_growth_report(m, PG_PIVOT_PARTIAL, &mut rep), PG_OK);
        assert_eq!(rep.rho_max, 32.0);
        assert_eq!(rep.arg_step, 5);
        assert_eq!((rep.arg_row, rep.arg_col), (5, 5));
        assert!(rep.rho_two >= 1.0);
        pg_matrix_free(m);
    }
}

#[test]
fn trace_accessors_and_json() {
    // the 2x2 case needs one row swap under partial pivoting
    let m = matrix(2, 2, &[1.0, 2.0, 3.0, 4.0]);
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(pg_factorize(m, PG_PIVOT_PARTIAL, &mut t), PG_OK);
        assert_eq!(pg_trace_order(t), 2);
        let mut piv = [0.0; 2];
        assert_eq!(pg_trace_pivots(t, piv.as_mut_ptr(), 2), PG_OK);
        assert_eq!(piv[0], 3.0);
        assert!((piv[1] - 2.0 / 3.0).abs() < 1e-15);
        let (mut rows, mut cols) = ([9usize; 2], [9usize; 2]);
        assert_eq!(pg_trace_permutations(t, rows.as_mut_ptr(), cols.as_mut_ptr(), 2), PG_OK);
        assert_eq!((rows, cols), ([1, 0], [0, 1]));

        let mut s = ptr::null_mut();
        assert_eq!(pg_trace_to_json(t, &mut s), PG_OK);
        let json: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        assert_eq!(json["strategy"], "PARTIAL");
        assert_eq!(json["rowPerm"], serde_json::json!([1, 0]));
        assert_eq!(json["rhoMax"], 1.0);
        pg_string_free(s);
        pg_trace_free(t);
        pg_matrix_free(m);
    }
}

#[test]
fn haar_sample_is_reproducible() {
    unsafe {
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(pg_haar_orthogonal(4, 7, 0, &mut a), PG_OK);
        assert_eq!(pg_haar_orthogonal(4, 7, 0, &mut b), PG_OK);
        let (mut x, mut y) = ([0.0; 16], [0.0; 16]);
        pg_matrix_copy(a, x.as_mut_ptr(), 16);
        pg_matrix_copy(b, y.as_mut_ptr(), 16);
        assert_eq!(x, y);
        pg_matrix_free(a);
        pg_matrix_free(b);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(pg_matrix_new(2, 2, ptr::null(), &mut m), PG_NULL_POINTER);
        assert!(m.is_null());
        assert!(last_error().contains("null"));

        let nan = [f64::NAN];
        assert_eq!(pg_matrix_new(1, 1, nan.as_ptr(), &mut m), PG_NON_FINITE);
        assert!(m.is_null());
        let mut rho = 0.0;

        let z = matrix(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let mut t = ptr::null_mut();
        assert_eq!(pg_factorize(z, PG_PIVOT_NONE, &mut t), PG_ZERO_PIVOT);
        assert!(t.is_null());
        assert_eq!(pg_factorize(z, 7, &mut t), PG_INVALID_ARGUMENT);
        assert!(last_error().contains("strategy"));
        pg_matrix_free(z);

        let s = matrix(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert_eq!(pg_growth_factor(s, PG_PIVOT_COMPLETE, &mut rho), PG_SINGULAR);
        pg_matrix_free(s);

        let r = matrix(2, 3, &[0.0; 6]);
        assert_eq!(pg_growth_factor(r, PG_PIVOT_PARTIAL, &mut rho), PG_DIMENSION);
        pg_matrix_free(r);

        let bad = CString::new("nope").unwrap();
        assert_eq!(pg_model(bad.as_ptr(), 3, &mut m), PG_INVALID_ARGUMENT);

        for code in 0..=12 {
            assert!(!CStr::from_ptr(pg_error_string(code)).to_bytes().is_empty());
        }
        pg_matrix_free(ptr::null_mut());
        pg_trace_free(ptr::null_mut());
        pg_string_free(ptr::null_mut());
    }
}
