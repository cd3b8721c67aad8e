fn main() {
    // Hermitian eigendecompositions go through the system LAPACK; the FFI
    // declarations come from lapack-sys, which deliberately links nothing.
    println!("cargo:rustc-link-lib=dylib=lapack");
    println!("cargo:rustc-link-lib=dylib=blas");
}
