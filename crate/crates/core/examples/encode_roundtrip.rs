//! Encoding non-bases and decoding them again, for one matroid and for the
//! whole census at n = 6.

use matroid_census::{census, encoder, format, matroid::named};

fn main() {
    let m = named::parallel_pair();
    let e = encoder::encode(&m).unwrap();
    println!("{}", format::format_matroid(&m));
    println!("{}", format::format_encoding(&e));
    assert_eq!(e.decode().unwrap(), m);
    assert_eq!(e.decode_u().unwrap(), m.nonbasis_partition().u);

    let (mut total, mut with_p, mut with_t, mut with_w, mut max_s) = (0, 0, 0, 0, 0);
    for m in census::full_census(6, 1).unwrap() {
        if m.has_loops() || m.has_coloops() {
            continue;
        }
        let (e, trace) = encoder::encode_with_trace(&m).unwrap();
        assert_eq!(e.decode().unwrap(), m);
        total += 1;
        with_t += (e.t_count() > 0) as u32;
        with_w += (!e.w.is_empty()) as u32;
        max_s = max_s.max(e.s.count());
        if let Some(t) = trace {
            with_p += (!t.p.is_empty()) as u32;
        }
    }
    println!("n = 6: {total} loopless coloopless matroids round-trip");
    println!("  nonempty P: {with_p}, t > 0: {with_t}, nonempty W: {with_w}, largest S: {max_s}");
}
