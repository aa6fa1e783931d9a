//! Word tuples, their padded encoding, and the shuffles an asynchronous
//! machine may read.

use multitape::words::{enumerate_shuffles, pad, unpad, Alphabet};

fn main() -> multitape::Result<()> {
    let a = Alphabet::new(["x", "y"])?;
    let t = a.parse_tuple("xy,x,")?;
    println!("tuple   {}", a.render_tuple(&t));

    let padded = pad(&t);
    let columns: Vec<String> = padded.columns().iter().map(|c| a.render_padded(c)).collect();
    println!("padded  {}", columns.join(" "));
    assert_eq!(unpad(&padded)?, t);

    let small = a.parse_tuple("xy,x")?;
    let shuffles = enumerate_shuffles(&small, true);
    println!("{} shuffles of {} with end markers:", shuffles.len(), a.render_tuple(&small));
    for s in &shuffles {
        let read: Vec<String> = s
            .tape_order
            .iter()
            .zip(&s.symbols)
            .map(|(tape, sym)| format!("{}{}", a.render_symbol(*sym), tape + 1))
            .collect();
        println!("  {}", read.join(" "));
    }
    Ok(())
}
