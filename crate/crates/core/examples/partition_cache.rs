//! Write a p(n) cache, read it back and extend it.

use residue_parts::exact::PartitionTable;

fn main() -> residue_parts::Result<()> {
    let dir = std::env::temp_dir().join("residue-parts-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("p.ptable");
    let _ = std::fs::remove_file(&path);

    let small = PartitionTable::load_or_build(&path, 200)?;
    println!("built to n = {}, p(200) = {}", small.max_n(), small.get(200).unwrap());

    let back = PartitionTable::read_cache(&path)?;
    assert_eq!(back.values(), small.values());
    println!("read back {} values", back.values().len());

    let larger = PartitionTable::load_or_build(&path, 1000)?;
    println!("extended to n = {}, p(1000) has {} digits", larger.max_n(), larger.get(1000).unwrap().to_string().len());

    let text = std::fs::read_to_string(&path)?;
    println!("first lines:");
    for line in text.lines().take(4) {
        println!("  {line}");
    }
    Ok(())
}
