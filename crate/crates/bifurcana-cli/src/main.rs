fn main() {
    // subcommands land here once the library surface is in place
}
