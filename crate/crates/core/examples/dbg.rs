use li_forge_core::*;
use li_forge_core::complex::ComplexHP;
fn main() {
    let ct = PrecisionCtx::default();
    let p = ct.prec_bits();
    // xi(1/2) string
    let v = xi(&ComplexHP::from_f64(p, 0.5, 0.0), &ct).unwrap();
    println!("xi(1/2) str: {:?}", v.re.to_string_radix(10, Some(26)));
    // zeta(1/2+25i)
    let z = zeta(&ComplexHP::from_f64(p, 0.5, 25.0), &ct).unwrap();
    println!("zeta(0.5+25i) = {:?} {:?}", z.re.to_f64(), z.im.to_f64());
    // gamma reflection debug
    let zg = ComplexHP::from_f64(p, -1.3, 2.4);
    let lg = ln_gamma(&zg, &ct).unwrap();
    println!("lngamma(-1.3+2.4i) = {} , {}", lg.re.to_f64(), lg.im.to_f64());
    let lg2 = ln_gamma(&ComplexHP::from_f64(p, 2.3, -2.4), &ct).unwrap();
    let pi = li_forge_core::complex::pi(&ct);
    let piz = zg.scale(&pi);
    let rhs = ComplexHP::real(pi).div(&piz.sin());
    let lhs_exp = lg.add(&lg2).exp();
    println!("lhs_exp = {} {}", lhs_exp.re.to_f64(), lhs_exp.im.to_f64());
    println!("rhs     = {} {}", rhs.re.to_f64(), rhs.im.to_f64());
    // partition
    let table = ingest_zero_table("14.134725142\n21.022039639\n").unwrap();
    let zp = partition_function(10.0, &table).unwrap();
    let first = (-10.0f64 * 14.134725142).exp();
    println!("Z(10) = {zp:e}, first = {first:e}, ratio-1 = {:e}", zp/first - 1.0);
    // near zero check
    match im_log_xi_critical(14.134725141734694, &ct) {
        Ok(v) => println!("im_log_xi at mu1: Ok({})", v.to_f64()),
        Err(e) => println!("im_log_xi at mu1: Err({e})"),
    }
}
