/** Reader for the versioned binary landscape snapshot header.
 *
 * Layout (little-endian): magic "FGRSNAP1", u32 version, u32 n, per locus
 * a u16 allele count followed by length-prefixed UTF-8 symbols, then u64
 * node count, u64 edge count, u8 variance flag.  The node/edge arrays that
 * follow are not needed here; the header alone carries the graph shape.
 */

import { readFile } from "node:fs/promises";

const MAGIC = "FGRSNAP1";
const SUPPORTED_VERSION = 1;

export interface SnapshotHeader {
  version: number;
  alphabets: string[][];
  nodeCount: number;
  edgeCount: number;
  hasVariance: boolean;
  /** Product of alphabet sizes: the full size of the sequence space. */
  totalSpaceSize: number;
}

export function parseSnapshotHeader(buf: Buffer): SnapshotHeader {
  if (buf.subarray(0, 8).toString("latin1") !== MAGIC) {
    throw new Error("not a landscape snapshot (bad magic)");
  }
  let pos = 8;
  const version = buf.readUInt32LE(pos);
  pos += 4;
  if (version !== SUPPORTED_VERSION) {
    throw new Error(`unsupported snapshot version ${version}`);
  }
  const n = buf.readUInt32LE(pos);
  pos += 4;
  const alphabets: string[][] = [];
  for (let i = 0; i < n; i++) {
    const m = buf.readUInt16LE(pos);
    pos += 2;
    const symbols: string[] = [];
    for (let a = 0; a < m; a++) {
      const len = buf.readUInt8(pos);
      pos += 1;
      symbols.push(buf.subarray(pos, pos + len).toString("utf8"));
      pos += len;
    }
    alphabets.push(symbols);
  }
  const nodeCount = Number(buf.readBigUInt64LE(pos));
  pos += 8;
  const edgeCount = Number(buf.readBigUInt64LE(pos));
  pos += 8;
  const hasVariance = buf.readUInt8(pos) !== 0;
  const totalSpaceSize = alphabets.reduce((acc, a) => acc * a.length, 1);
  return { version, alphabets, nodeCount, edgeCount, hasVariance, totalSpaceSize };
}

export async function readSnapshotHeader(path: string): Promise<SnapshotHeader> {
  return parseSnapshotHeader(await readFile(path));
}
