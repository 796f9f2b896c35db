// Minimal declarations for the chrome extension APIs this project touches.

declare namespace chrome.runtime {
  function sendMessage(message: unknown, callback?: (response: unknown) => void): void;
  const onMessage: {
    addListener(
      callback: (
        request: any,
        sender: unknown,
        sendResponse: (response?: unknown) => void
      ) => boolean | void
    ): void;
  };
  const lastError: { message?: string } | undefined;
}

declare namespace chrome.storage {
  interface StorageChange {
    oldValue?: unknown;
    newValue?: unknown;
  }
  interface StorageArea {
    get(
      keys: string | string[] | null,
      callback: (items: Record<string, any>) => void
    ): void;
    set(items: Record<string, unknown>, callback?: () => void): void;
  }
  const local: StorageArea;
  const onChanged: {
    addListener(
      callback: (changes: Record<string, StorageChange>, areaName: string) => void
    ): void;
  };
}
