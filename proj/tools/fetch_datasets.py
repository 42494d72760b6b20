#!/usr/bin/env python3
"""Download the benchmark datasets listed in the manifest into a data directory.

For each dataset: fetch the archive, extract the listed members, convert
spreadsheets to CSV where the manifest asks for it, and check SHA-256 digests.
Digests pinned in the manifest are enforced; unpinned ones are recorded in
<dir>/checksums.json so later fetches can be compared against them.
"""

import argparse
import hashlib
import io
import json
import pathlib
import sys
import urllib.request
import zipfile


def sha256(path: pathlib.Path) -> str:
    h = hashlib.sha256()
    with path.open("rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def extract(archive: bytes, members, dest: pathlib.Path) -> None:
    with zipfile.ZipFile(io.BytesIO(archive)) as zf:
        names = zf.namelist()
        for member in members:
            # Some archives nest the files one directory deep or inside another zip.
            match = next((n for n in names if pathlib.PurePosixPath(n).name == member), None)
            if match is not None:
                (dest / member).write_bytes(zf.read(match))
                continue
            inner = [n for n in names if n.endswith(".zip")]
            for n in inner:
                try:
                    extract(zf.read(n), [member], dest)
                    break
                except KeyError:
                    continue
            else:
                raise KeyError(f"{member} not found in archive")


def convert_spreadsheet(src: pathlib.Path, dst: pathlib.Path, columns) -> None:
    import pandas as pd  # xlrd is needed for legacy .xls files

    frame = pd.read_excel(src)
    if len(frame.columns) != len(columns):
        raise ValueError(f"{src.name}: expected {len(columns)} columns, found {len(frame.columns)}")
    frame.columns = columns
    frame.to_csv(dst, index=False)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dir", default="data", help="destination directory")
    parser.add_argument("--manifest", default="data/manifest.json")
    parser.add_argument("--only", nargs="*", help="dataset names to fetch")
    args = parser.parse_args()

    dest = pathlib.Path(args.dir)
    dest.mkdir(parents=True, exist_ok=True)
    manifest = json.loads(pathlib.Path(args.manifest).read_text())
    record_path = dest / "checksums.json"
    recorded = json.loads(record_path.read_text()) if record_path.exists() else {}

    failed = False
    for name, entry in manifest["datasets"].items():
        if args.only and name not in args.only:
            continue
        source = entry["source"]
        print(f"[{name}] downloading {source['url']}")
        try:
            with urllib.request.urlopen(source["url"], timeout=120) as resp:
                archive = resp.read()
            extract(archive, source["extract"], dest)
            for src_name, conv in source.get("convert", {}).items():
                convert_spreadsheet(dest / src_name, dest / conv["to"], conv["columns"])
        except Exception as exc:  # report and continue with the other datasets
            print(f"[{name}] failed: {exc}", file=sys.stderr)
            failed = True
            continue

        for file_name, pinned in entry.get("sha256", {}).items():
            digest = sha256(dest / file_name)
            if pinned and pinned != digest:
                print(f"[{name}] checksum mismatch for {file_name}: {digest} != {pinned}",
                      file=sys.stderr)
                failed = True
            elif file_name in recorded and recorded[file_name] != digest:
                print(f"[{name}] {file_name} differs from the previously recorded digest",
                      file=sys.stderr)
                failed = True
            recorded[file_name] = digest
            print(f"[{name}] {file_name} sha256={digest}")

    record_path.write_text(json.dumps(recorded, indent=2, sort_keys=True) + "\n")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
