fn main() {
    println!("roomcodec");
}
