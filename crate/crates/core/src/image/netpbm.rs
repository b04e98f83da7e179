//! Binary PGM (P5) and PPM (P6) with maxval 255.

use std::fs;
use std::path::Path;

use super::ImagePlane;
use crate::error::{Error, Result};

pub fn read_netpbm(path: impl AsRef<Path>) -> Result<ImagePlane> {
    let path = path.as_ref();
    let bytes = fs::read(path)?;
    parse(&bytes).map_err(|msg| Error::Format {
        path: path.to_path_buf(),
        msg,
    })
}

pub fn write_netpbm(path: impl AsRef<Path>, img: &ImagePlane) -> Result<()> {
    fs::write(path, encode(img))?;
    Ok(())
}

pub(crate) fn encode(img: &ImagePlane) -> Vec<u8> {
    let magic = if img.is_gray() { "P5" } else { "P6" };
    let mut out = format!("{magic}\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.data());
    out
}

pub(crate) fn parse(bytes: &[u8]) -> std::result::Result<ImagePlane, String> {
    let mut pos = 0;
    let magic = token(bytes, &mut pos).ok_or("missing magic number")?;
    let channels = match magic.as_str() {
        "P5" => 1,
        "P6" => 3,
        other => return Err(format!("unsupported magic `{other}`, expected P5 or P6")),
    };
    let mut header = [0usize; 3];
    for (slot, what) in header.iter_mut().zip(["width", "height", "maxval"]) {
        let t = token(bytes, &mut pos).ok_or(format!("missing {what}"))?;
        *slot = t.parse().map_err(|_| format!("bad {what} `{t}`"))?;
    }
    let [width, height, maxval] = header;
    if maxval != 255 {
        return Err(format!("maxval {maxval} unsupported, expected 255"));
    }
    // Exactly one whitespace byte separates the header from the raster.
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err("missing whitespace after maxval".into());
    }
    pos += 1;
    let n = width * height * channels;
    let raster = bytes.get(pos..pos + n).ok_or(format!(
        "raster truncated: need {n} bytes, have {}",
        bytes.len() - pos
    ))?;
    ImagePlane::new(width, height, channels, raster.to_vec()).map_err(|e| e.to_string())
}

fn token(bytes: &[u8], pos: &mut usize) -> Option<String> {
    loop {
        match bytes.get(*pos)? {
            b'#' => {
                while *bytes.get(*pos)? != b'\n' {
                    *pos += 1;
                }
            }
            b if b.is_ascii_whitespace() => *pos += 1,
            _ => break,
        }
    }
    let start = *pos;
    while bytes
        .get(*pos)
        .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
    {
        *pos += 1;
    }
    Some(String::from_utf8_lossy(&bytes[start..*pos]).into_owned())
}
