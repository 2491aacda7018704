/** Paging arithmetic for the table inspector. */

export interface PageInfo {
  pageCount: number;
  page: number; // zero-based
  offset: number;
  limit: number;
  hasPrev: boolean;
  hasNext: boolean;
}

export function pageInfo(total: number, pageSize: number, page: number): PageInfo {
  if (pageSize <= 0) throw new Error("page size must be positive");
  const pageCount = Math.max(1, Math.ceil(total / pageSize));
  const clamped = Math.min(Math.max(page, 0), pageCount - 1);
  return {
    pageCount,
    page: clamped,
    offset: clamped * pageSize,
    limit: pageSize,
    hasPrev: clamped > 0,
    hasNext: clamped < pageCount - 1,
  };
}
