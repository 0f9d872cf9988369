use std::fs;
use std::path::Path;

use symword_core::genword::GenSymWord;
use symword_core::matcore::pdm::{read_pdm, read_pdm_general, write_pdm_auto};
use symword_core::wordlang::WordExpr;
use symword_core::{CMat, PdMatrix};

use crate::commands::Failure;

fn read_text(flag: &str, path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{flag} {}: {e}", path.display())))
}

pub fn pd_matrix(flag: &str, path: &Path) -> Result<PdMatrix, Failure> {
    let text = read_text(flag, path)?;
    read_pdm(&text)
        .and_then(PdMatrix::new)
        .map_err(|e| Failure::input(format!("{flag} {}: {e}", path.display())))
}

/// Any square matrix, Hermitian or not.
pub fn general_matrix(flag: &str, path: &Path) -> Result<CMat, Failure> {
    let text = read_text(flag, path)?;
    read_pdm_general(&text).map_err(|e| Failure::input(format!("{flag} {}: {e}", path.display())))
}

pub fn word(text: &str) -> Result<WordExpr, Failure> {
    text.parse().map_err(|e| Failure::input(format!("--word `{text}`: {e}")))
}

pub fn gen_word(text: &str) -> Result<GenSymWord, Failure> {
    text.parse().map_err(|e| Failure::input(format!("--word `{text}`: {e}")))
}

pub fn write_matrix(path: &Path, m: &CMat) -> Result<(), Failure> {
    fs::write(path, write_pdm_auto(m)).map_err(|e| Failure::input(format!("--out {}: {e}", path.display())))
}
